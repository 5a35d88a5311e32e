mod common;

use ibalg::gen::{gen_homogeneous_family, gen_random_family, gen_scattered_family};
use ibalg::homogeneity::check_homogeneous;
use ibalg::search::{
    ell_matrix, exhaustive_quadruple, exhaustive_sextuple, find_quadruple, find_sextuple, gap_side,
    ramsey_quad, ramsey_quad_naive, Coloring, Method, Mode, Side,
};
use ibalg::{Element, ExtPoint, Family, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bits, campaign_family, from_bits, full_mask};

/// Extends `c` pair by pair in `(β, α)` order, rejecting a colour as soon as
/// it closes a cross-equal quadruple. Returns whether a full avoiding
/// colouring exists; colour 0 is fixed for the first pair.
fn extend_avoiding(c: &mut [Vec<u8>], pairs: &[(usize, usize)], i: usize, k: u8) -> bool {
    let Some(&(a, b)) = pairs.get(i) else { return true };
    for col in 0..if i == 0 { 1 } else { k } {
        c[a][b] = col;
        let closes = (0..a)
            .filter(|&a0| c[a0][b] == col)
            .any(|a0| (a + 1..b).any(|a2| c[a0][a2] == col && c[a][a2] == col));
        if !closes && extend_avoiding(c, pairs, i + 1, k) {
            return true;
        }
    }
    false
}

fn avoiding_coloring(n: usize, k: u8) -> Option<Vec<Vec<u8>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    let mut c = vec![vec![0; n]; n];
    extend_avoiding(&mut c, &pairs, 0, k).then_some(c)
}

#[test]
fn two_colour_threshold_is_ten() {
    let threshold = (4..=16).find(|&n| avoiding_coloring(n, 2).is_none()).unwrap();
    assert_eq!(threshold, 10);
    assert!(threshold <= Mode::Quadruple.required_members(2));
    // the largest avoider really avoids, by both search routines
    let c = avoiding_coloring(threshold - 1, 2).unwrap();
    assert_eq!(ramsey_quad(threshold - 1, |a, b| c[a][b]), None);
    assert_eq!(ramsey_quad_naive(threshold - 1, |a, b| c[a][b]), None);
}

#[test]
fn ramsey_matches_naive_on_small_colourings() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..2_000 {
        let n = rng.gen_range(0..14);
        let k = rng.gen_range(1..5);
        let col = Coloring::random(&mut rng, n, k);
        assert_eq!(col.find_quad(), ramsey_quad_naive(n, |a, b| col.get(a, b)));
    }
}

fn seeded_family(rng: &mut ChaCha8Rng, n: usize) -> Family {
    let kappa = rng.gen_range(1..=2);
    let ps: Vec<usize> = (0..kappa).map(|_| rng.gen_range(12..=24)).collect();
    let ks: Vec<usize> = (0..kappa).map(|_| rng.gen_range(2..=4)).collect();
    let seed = rng.gen();
    if rng.gen_bool(0.5) {
        if let Ok(f) = gen_scattered_family(seed, &ps, &ks, n) {
            return f;
        }
    }
    gen_homogeneous_family(seed, &ps, &[2; 2][..kappa], n).unwrap()
}

#[test]
fn sextuple_search_agrees_with_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let mut below_bound = 0;
    for round in 0..300 {
        let n = rng.gen_range(0..=10);
        let fam = seeded_family(&mut rng, n);
        let v = ell_matrix(&fam).unwrap().distinct();
        for mode in [Mode::Short, Mode::Symmetric] {
            let got = find_sextuple(&fam, mode).unwrap();
            let least = exhaustive_sextuple(&fam, mode).unwrap();
            assert_eq!(got.is_some(), least.is_some(), "round {round} {mode:?}");
            if let (Some(cert), Some(least)) = (&got, &least) {
                assert!(cert.verify(&fam).unwrap());
                assert!(*least <= cert.indices);
                if cert.provenance.method == Method::Exhaustive {
                    assert_eq!(*least, cert.indices);
                }
            }
            if fam.len() >= mode.required_members(v) {
                assert!(got.is_some(), "round {round} {mode:?}: bound met but none found");
            } else {
                below_bound += 1;
            }
        }
    }
    assert!(below_bound > 0);
}

#[test]
fn pigeonhole_bound_forces_a_pattern_hit() {
    for index in 0..40 {
        let fam = campaign_family(Mode::Short, index, 53);
        let cert = find_sextuple(&fam, Mode::Short).unwrap().expect("bound met");
        assert_eq!(cert.provenance.method, Method::Pattern, "family {index}");
        let least = exhaustive_sextuple(&fam, Mode::Short).unwrap().unwrap();
        assert!(least <= cert.indices);
    }
}

#[test]
fn quadruple_search_agrees_with_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    for round in 0..300 {
        let n = rng.gen_range(0..=12);
        let fam = seeded_family(&mut rng, n);
        let got = find_quadruple(&fam).unwrap();
        let least = exhaustive_quadruple(&fam).unwrap();
        assert_eq!(got.is_some(), least.is_some(), "round {round}");
        if let Some(cert) = got {
            assert!(cert.verify(&fam).unwrap());
            assert!(cert.provenance.anomalies.is_empty(), "round {round}: {:?}", cert.provenance.anomalies);
        }
        let v = ell_matrix(&fam).unwrap().distinct();
        if fam.len() >= Mode::Quadruple.required_members(v) {
            assert!(least.is_some());
        }
    }
}

#[test]
fn quadruple_on_nested_chain_is_initial() {
    use ExtPoint::*;
    for n in 4..=9 {
        let seq = (1..=n).map(|i| Element::new(20, vec![Pt(i), Pt(20 - i)]).unwrap()).collect();
        let fam = Family::from_sequence(20, seq).unwrap();
        assert_eq!(ell_matrix(&fam).unwrap().distinct(), 1);
        let cert = find_quadruple(&fam).unwrap().unwrap();
        assert_eq!(cert.indices, vec![0, 1, 2, 3]);
        assert_eq!(cert.provenance.method, Method::Pattern);
        assert!(cert.verify(&fam).unwrap());
    }
}

#[test]
fn identical_pairs_give_empty_differences() {
    let fam = Family::from_sequence(6, vec![Element::full(6); 4]).unwrap();
    let cert = find_quadruple(&fam).unwrap().unwrap();
    assert_eq!(cert.indices, vec![0, 1, 2, 3]);
    let t = Term::parse("x0 ^ x1").unwrap();
    assert!(fam.vanishes(&t, &[0, 1]).unwrap());
}

/// `a0 = [1,20)` holds `a1 = [6,10)` and `a2 = [2,4)` in the same gap, and
/// `a2` lies in `a1`'s first gap, yet `(x0△x1)·x2` is not zero: equal ℓ
/// values alone do not make the symmetric term vanish.
#[test]
fn equal_ell_does_not_force_symmetric_factor() {
    use ExtPoint::*;
    let p = 21;
    let seq: Vec<Element> = [(1, 20), (6, 10), (2, 4)]
        .iter()
        .map(|&(a, b)| Element::new(p, vec![Pt(a), Pt(b)]).unwrap())
        .collect();
    let table = check_homogeneous(&seq).unwrap();
    assert_eq!((table.get(0, 1), table.get(0, 2), table.get(1, 2)), (1, 1, 0));
    let t = Term::parse("(x0^x1)*x2").unwrap();
    assert!(!t.eval(p, &seq).unwrap().is_empty());
}

#[test]
fn key_fact_matches_gap_side() {
    let mut checked = 0;
    for index in 0..30 {
        let fam = campaign_family(Mode::Short, index, 55);
        let ells = ell_matrix(&fam).unwrap();
        let with = Term::parse("(x1^x2)*x0").unwrap();
        let without = Term::parse("(x1^x2)*-x0").unwrap();
        let n = fam.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if ells.id(a, b) != ells.id(a, c) {
                        continue;
                    }
                    for zeta in 0..fam.kappa() {
                        let p = fam.order_sizes()[zeta];
                        let assign: Vec<Element> =
                            [a, b, c].iter().map(|&i| fam.member(i)[zeta].clone()).collect();
                        let side = gap_side(&fam, zeta, a, ells.ell_at(zeta, a, b)).unwrap();
                        let zero = match side {
                            Side::Inside => &without,
                            Side::Outside => &with,
                        };
                        assert!(zero.eval(p, &assign).unwrap().is_empty());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1_000);
}

#[test]
fn short_term_is_dominated_by_symmetric_form() {
    let tau = Term::parse("x0*x1*-x2*-x3*x4*-x5").unwrap();
    let dom = Term::parse("(x1^x2)*x0*(x4^x5)*-x3").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(56);
    for _ in 0..5_000 {
        let p = rng.gen_range(0..=32);
        let xs: Vec<Element> = (0..6).map(|_| from_bits(p, rng.gen::<u64>() & full_mask(p))).collect();
        let small = bits(&tau.eval(p, &xs).unwrap());
        let big = bits(&dom.eval(p, &xs).unwrap());
        assert_eq!(small & !big, 0);
    }
}

#[test]
fn random_families_are_rejected_or_searched_soundly() {
    for seed in 0..30 {
        let fam = gen_random_family(seed, 1, &[10], 8, 2).unwrap();
        match find_sextuple(&fam, Mode::Short) {
            Ok(Some(cert)) => assert!(cert.verify(&fam).unwrap()),
            Ok(None) => assert!(exhaustive_sextuple(&fam, Mode::Short).unwrap().is_none()),
            Err(e) => assert!(ell_matrix(&fam).is_err(), "{e}"),
        }
    }
}
