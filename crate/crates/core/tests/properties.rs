mod common;

use ibalg::terms::{Term, TwoElement};
use ibalg::Element;
use proptest::prelude::*;

use common::{bits, from_bits, full_mask};

fn element(p: usize) -> impl Strategy<Value = Element> {
    any::<u64>().prop_map(move |x| from_bits(p, x & full_mask(p)))
}

fn triple() -> impl Strategy<Value = (Element, Element, Element)> {
    (0usize..=40).prop_flat_map(|p| (element(p), element(p), element(p)))
}

fn term(vars: usize) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        1 => Just(Term::Zero),
        1 => Just(Term::One),
        6 => (0..vars).prop_map(Term::var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::symdiff(a, b)),
            inner.prop_map(Term::compl),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 512,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn boolean_laws((a, b, c) in triple()) {
        let m = |x: &Element, y: &Element| x.meet(y).unwrap();
        let j = |x: &Element, y: &Element| x.join(y).unwrap();
        let p = a.order_size();
        prop_assert_eq!(m(&a, &b), m(&b, &a));
        prop_assert_eq!(j(&a, &b), j(&b, &a));
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(j(&j(&a, &b), &c), j(&a, &j(&b, &c)));
        prop_assert_eq!(m(&a, &j(&b, &c)), j(&m(&a, &b), &m(&a, &c)));
        prop_assert_eq!(j(&a, &m(&b, &c)), m(&j(&a, &b), &j(&a, &c)));
        prop_assert_eq!(m(&a, &j(&a, &b)), a.clone());
        prop_assert_eq!(j(&a, &m(&a, &b)), a.clone());
        prop_assert_eq!(j(&a, &b).complement(), m(&a.complement(), &b.complement()));
        prop_assert_eq!(m(&a, &a.complement()), Element::empty(p));
        prop_assert_eq!(j(&a, &a.complement()), Element::full(p));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(
            a.symdiff(&b).unwrap(),
            j(&m(&a, &b.complement()), &m(&a.complement(), &b))
        );
    }

    #[test]
    fn parser_round_trip(t in term(6)) {
        let text = t.to_string();
        prop_assert_eq!(Term::parse(&text).unwrap(), t.clone());
        let spaced: String = text
            .chars()
            .flat_map(|c| if "()*^+-".contains(c) { vec![' ', c, ' '] } else { vec![c] })
            .collect();
        prop_assert_eq!(Term::parse(&spaced).unwrap(), t);
    }

    /// Value at a point is decided by the sign vector of the point alone.
    #[test]
    fn interval_evaluation_follows_minterms(
        t in term(4),
        p in 1usize..=48,
        xs in proptest::collection::vec(any::<u64>(), 4),
    ) {
        let assign: Vec<Element> = xs.iter().map(|&x| from_bits(p, x & full_mask(p))).collect();
        let value = bits(&t.eval(p, &assign).unwrap());
        let table = t.minterms(4).unwrap();
        for point in 0..p {
            let signs: Vec<bool> = assign.iter().map(|a| a.contains(point)).collect();
            prop_assert_eq!(value >> point & 1 == 1, table.contains(&signs));
        }
    }

    #[test]
    fn two_element_evaluation_follows_minterms(t in term(5)) {
        let table = t.minterms(5).unwrap();
        for m in 0u32..32 {
            let signs: Vec<bool> = (0..5).map(|i| m >> i & 1 == 1).collect();
            prop_assert_eq!(t.eval_in(&TwoElement, &signs).unwrap(), table.contains(&signs));
        }
    }

    #[test]
    fn minterms_are_monotone(s in term(4), t in term(4)) {
        let ms = s.minterms(4).unwrap();
        let mt = t.minterms(4).unwrap();
        let meet = Term::meet(s.clone(), t.clone()).minterms(4).unwrap();
        let join = Term::join(s.clone(), t.clone()).minterms(4).unwrap();
        prop_assert!(ms.is_superset(&meet) && mt.is_superset(&meet));
        prop_assert!(join.is_superset(&ms) && join.is_superset(&mt));
        prop_assert_eq!(Term::compl(s.clone()).minterms(4).unwrap().len(), 16 - ms.len());
    }

    /// Over 2^n points the binary coding realises every sign vector, so a term
    /// is nontrivial exactly when it is nonzero there.
    #[test]
    fn nontrivial_iff_nonzero_on_binary_coding(t in term(4)) {
        let p = 16;
        let assign: Vec<Element> = (0..4)
            .map(|j| Element::from_point_set(p, (0..p).filter(|x| x >> j & 1 == 1)).unwrap())
            .collect();
        let n = t.num_vars();
        let nonzero = !t.eval(p, &assign).unwrap().is_empty();
        if n > 0 {
            prop_assert_eq!(t.is_nontrivial().unwrap(), nonzero);
        }
        prop_assert!(Term::meet(t.clone(), Term::compl(t)).eval(p, &assign).unwrap().is_empty());
    }
}
