//! Finite products of interval algebras and families of their members.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, ExtPoint};
use crate::error::{Error, Result};
use crate::terms::Term;

/// Largest index set accepted by [`Family::is_independent`].
pub const MAX_INDEPENDENCE_SIZE: usize = 16;

/// An ordered list of members of `Π_{ζ<κ} B(p_ζ)`.
///
/// `member(α)[ζ]` is the coordinate `a_{α,ζ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    order_sizes: Vec<usize>,
    members: Vec<Vec<Element>>,
    seed: Option<u64>,
}

impl Family {
    pub fn new(order_sizes: Vec<usize>, members: Vec<Vec<Element>>) -> Result<Self> {
        for (alpha, member) in members.iter().enumerate() {
            if member.len() != order_sizes.len() {
                return Err(Error::input(format!(
                    "member {alpha} has {} coordinates, expected {}",
                    member.len(),
                    order_sizes.len()
                )));
            }
            for (zeta, (a, &p)) in member.iter().zip(&order_sizes).enumerate() {
                if a.order_size() != p {
                    return Err(Error::input(format!(
                        "member {alpha} coordinate {zeta} has order size {}, expected {p}",
                        a.order_size()
                    )));
                }
            }
        }
        Ok(Family { order_sizes, members, seed: None })
    }

    /// Single-coordinate family.
    pub fn from_sequence(order_size: usize, seq: Vec<Element>) -> Result<Self> {
        Self::new(vec![order_size], seq.into_iter().map(|a| vec![a]).collect())
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn kappa(&self) -> usize {
        self.order_sizes.len()
    }

    pub fn order_sizes(&self) -> &[usize] {
        &self.order_sizes
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, alpha: usize) -> &[Element] {
        &self.members[alpha]
    }

    pub fn members(&self) -> &[Vec<Element>] {
        &self.members
    }

    /// `⟨a_{α,ζ} : α⟩` for a fixed coordinate.
    pub fn coordinate(&self, zeta: usize) -> Vec<Element> {
        self.members.iter().map(|m| m[zeta].clone()).collect()
    }

    /// The subfamily on the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Family> {
        self.check_indices(indices)?;
        Ok(Family {
            order_sizes: self.order_sizes.clone(),
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
            seed: self.seed,
        })
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&i| i >= self.len()) {
            Some(i) => {
                Err(Error::input(format!("member index {i} out of range for a family of {}", self.len())))
            }
            None => Ok(()),
        }
    }

    /// Coordinatewise value of `t(a_{indices[0]}, a_{indices[1]}, …)`.
    pub fn prod_eval(&self, t: &Term, indices: &[usize]) -> Result<Vec<Element>> {
        self.check_indices(indices)?;
        if t.num_vars() > indices.len() {
            return Err(Error::input(format!(
                "term needs {} arguments, {} indices given",
                t.num_vars(),
                indices.len()
            )));
        }
        (0..self.kappa())
            .map(|zeta| {
                let assign: Vec<Element> = indices.iter().map(|&i| self.members[i][zeta].clone()).collect();
                Ok(t.eval(self.order_sizes[zeta], &assign)?)
            })
            .collect()
    }

    /// True iff `t` evaluates to the zero of the product on these indices.
    pub fn vanishes(&self, t: &Term, indices: &[usize]) -> Result<bool> {
        Ok(is_zero(&self.prod_eval(t, indices)?))
    }

    /// Tests whether the members at `indices` form an independent set of the
    /// product: every elementary product `Π a_j^{ε_j}` must be nonzero in some
    /// coordinate. Sign patterns are explored in lexicographic order
    /// (`ε_0` first, complemented before plain), so the reported witness is the
    /// least failing pattern.
    pub fn is_independent(&self, indices: &[usize]) -> Result<Independence> {
        if indices.len() > MAX_INDEPENDENCE_SIZE {
            return Err(Error::Capacity {
                what: "independence index set",
                got: indices.len(),
                limit: MAX_INDEPENDENCE_SIZE,
            });
        }
        self.check_indices(indices)?;
        let distinct: BTreeSet<usize> = indices.iter().copied().collect();
        if distinct.len() != indices.len() {
            return Err(Error::input("independence indices must be distinct"));
        }
        let start: Vec<Element> = self.order_sizes.iter().map(|&p| Element::full(p)).collect();
        let mut signs = Vec::with_capacity(indices.len());
        if self.first_zero_pattern(indices, &start, &mut signs) {
            signs.resize(indices.len(), false);
            let gamma = indices.iter().zip(&signs).filter(|(_, &s)| s).map(|(&i, _)| i).collect();
            let nabla = indices.iter().zip(&signs).filter(|(_, &s)| !s).map(|(&i, _)| i).collect();
            Ok(Independence::Dependent(DependenceWitness { signs, gamma, nabla }))
        } else {
            Ok(Independence::Independent)
        }
    }

    fn first_zero_pattern(&self, indices: &[usize], prefix: &[Element], signs: &mut Vec<bool>) -> bool {
        if is_zero(prefix) {
            return true;
        }
        let depth = signs.len();
        let Some(&alpha) = indices.get(depth) else {
            return false;
        };
        for sign in [false, true] {
            let next: Vec<Element> = prefix
                .iter()
                .zip(&self.members[alpha])
                .map(|(acc, a)| {
                    let literal = if sign { a.clone() } else { a.complement() };
                    acc.meet(&literal).expect("coordinates share order sizes")
                })
                .collect();
            signs.push(sign);
            if self.first_zero_pattern(indices, &next, signs) {
                return true;
            }
            signs.pop();
        }
        false
    }

    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            kappa: self.kappa(),
            order_sizes: self.order_sizes.clone(),
            elements: self
                .members
                .iter()
                .map(|m| m.iter().map(|a| a.endpoints().to_vec()).collect())
                .collect(),
            seed: self.seed,
        }
    }

    pub fn from_file(file: FamilyFile) -> Result<Self> {
        if file.kappa != file.order_sizes.len() {
            return Err(Error::input(format!(
                "kappa is {} but {} order sizes are listed",
                file.kappa,
                file.order_sizes.len()
            )));
        }
        let mut members = Vec::with_capacity(file.elements.len());
        for (alpha, raw) in file.elements.into_iter().enumerate() {
            if raw.len() != file.kappa {
                return Err(Error::input(format!(
                    "member {alpha} has {} coordinates, expected {}",
                    raw.len(),
                    file.kappa
                )));
            }
            let member = raw
                .into_iter()
                .zip(&file.order_sizes)
                .map(|(endpoints, &p)| Element::new(p, endpoints))
                .collect::<Result<Vec<_>, _>>()?;
            members.push(member);
        }
        Ok(Family::new(file.order_sizes, members)?.with_seed(file.seed))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }
}

/// On-disk form of a [`Family`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub kappa: usize,
    pub order_sizes: Vec<usize>,
    pub elements: Vec<Vec<Vec<ExtPoint>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub fn is_zero(value: &[Element]) -> bool {
    value.iter().all(Element::is_empty)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    Dependent(DependenceWitness),
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// A sign pattern whose elementary product vanishes in every coordinate.
/// `gamma` holds the members taken plainly, `nabla` those complemented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependenceWitness {
    pub signs: Vec<bool>,
    pub gamma: Vec<usize>,
    pub nabla: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExtPoint::*;

    fn el(p: usize, e: &[ExtPoint]) -> Element {
        Element::new(p, e.to_vec()).unwrap()
    }

    fn two_coord() -> Family {
        Family::new(
            vec![5, 3],
            vec![
                vec![el(5, &[Pt(1), Pt(3)]), el(3, &[MinusInf, Pt(1)])],
                vec![el(5, &[MinusInf, Pt(2)]), el(3, &[Pt(2), PlusInf])],
            ],
        )
        .unwrap()
    }

    #[test]
    fn prod_eval_examples() {
        let fam = two_coord();
        let zero = Term::parse("x0^x0").unwrap();
        assert!(fam.vanishes(&zero, &[1, 1]).unwrap());
        let id = Term::parse("x0").unwrap();
        assert_eq!(fam.prod_eval(&id, &[0]).unwrap(), fam.member(0));
        let both = Term::parse("x0*x1").unwrap();
        let v = fam.prod_eval(&both, &[0, 1]).unwrap();
        assert_eq!(v[0], el(5, &[Pt(1), Pt(2)]));
        assert!(v[1].is_empty());
        assert!(!is_zero(&v));
    }

    #[test]
    fn prod_eval_errors() {
        let fam = two_coord();
        let t = Term::parse("x0*x1").unwrap();
        assert!(matches!(fam.prod_eval(&t, &[0]), Err(Error::Input(_))));
        assert!(matches!(fam.prod_eval(&t, &[0, 2]), Err(Error::Input(_))));
    }

    #[test]
    fn family_validation() {
        assert!(Family::new(vec![5], vec![vec![el(4, &[])]]).is_err());
        assert!(Family::new(vec![5, 5], vec![vec![el(5, &[])]]).is_err());
        assert!(Family::new(vec![], vec![]).unwrap().is_empty());
    }

    #[test]
    fn complementary_pair_is_dependent() {
        let a = el(6, &[Pt(2), Pt(4)]);
        let fam = Family::from_sequence(6, vec![el(6, &[Pt(1), Pt(5)]), a.complement(), a]).unwrap();
        let Independence::Dependent(w) = fam.is_independent(&[1, 2]).unwrap() else {
            panic!("a and -a cannot be independent");
        };
        assert_eq!(w.signs, vec![false, false]);
        assert_eq!(w.gamma, Vec::<usize>::new());
        assert_eq!(w.nabla, vec![1, 2]);
        // every pattern over {1, 2} has both members in Γ ∪ ∇
        let w = match fam.is_independent(&[0, 1, 2]).unwrap() {
            Independence::Dependent(w) => w,
            _ => panic!(),
        };
        assert_eq!(w.gamma.len() + w.nabla.len(), 3);
    }

    #[test]
    fn two_generators_over_four_points() {
        let fam = Family::from_sequence(
            4,
            vec![el(4, &[MinusInf, Pt(2)]), el(4, &[MinusInf, Pt(1), Pt(2), Pt(3)]), el(4, &[Pt(1), Pt(3)])],
        )
        .unwrap();
        assert_eq!(fam.is_independent(&[0, 1]).unwrap(), Independence::Independent);
        assert!(!fam.is_independent(&[0, 1, 2]).unwrap().is_independent());
    }

    #[test]
    fn independence_errors() {
        let fam = two_coord();
        assert!(matches!(fam.is_independent(&[0, 0]), Err(Error::Input(_))));
        assert!(matches!(fam.is_independent(&[3]), Err(Error::Input(_))));
        let big = Family::from_sequence(2, vec![Element::empty(2); 17]).unwrap();
        let idx: Vec<usize> = (0..17).collect();
        assert!(matches!(big.is_independent(&idx), Err(Error::Capacity { .. })));
    }

    #[test]
    fn empty_index_set() {
        assert!(two_coord().is_independent(&[]).unwrap().is_independent());
        let degenerate = Family::new(vec![0], vec![vec![Element::empty(0)]]).unwrap();
        assert!(!degenerate.is_independent(&[]).unwrap().is_independent());
    }

    #[test]
    fn json_round_trip() {
        let fam = two_coord().with_seed(Some(7));
        let text = fam.to_json();
        assert_eq!(
            text,
            r#"{"kappa":2,"order_sizes":[5,3],"elements":[[[1,3],["-inf",1]],[["-inf",2],[2,"+inf"]]],"seed":7}"#
        );
        assert_eq!(Family::from_json(&text).unwrap(), fam);
        assert!(Family::from_json(r#"{"kappa":1,"order_sizes":[3],"elements":[[[0,2]]]}"#).is_err());
        assert!(Family::from_json(r#"{"kappa":2,"order_sizes":[3],"elements":[]}"#).is_err());
    }
}
