//! Homogeneous triples and the four terms that cover them.
//!
//! For every homogeneous triple `(a0, a1, a2)` in an interval algebra at least
//! one of
//!
//! ```text
//! τ1 = x0·x1·(−x2)    τ2 = (−x0)·(−x1)·x2    τ3 = x1·x2    τ4 = (−x1)·(−x2)
//! ```
//!
//! evaluates to zero. [`classify_triple`] decides which ones by direct
//! evaluation and tags the triple with the nesting case it falls under;
//! [`verify_lemma16`] sweeps every homogeneous triple over small orders.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Element, ExtPoint};
use crate::error::{Error, Result};
use crate::homogeneity::{check_homogeneous, nesting_gap};
use crate::terms::{Term, TRIPLE_TERMS};

pub const MAX_SWEEP_ORDER: usize = 8;
pub const MAX_SWEEP_SIGMA: usize = 6;

/// Parsed `τ1..τ4`; index `i` holds `τ(i+1)`.
pub fn triple_terms() -> &'static [Term; 4] {
    static TERMS: OnceLock<[Term; 4]> = OnceLock::new();
    TERMS.get_or_init(|| TRIPLE_TERMS.map(|s| Term::parse(s).expect("built-in term parses")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// `ℓ_{1,2}` is an interior gap of `a1`.
    Case1,
    /// `a2` sits in the first or last gap of `a1`.
    Case2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleClassification {
    /// Which of `τ1..τ4` vanish, numbered from 1.
    pub vanishing: BTreeSet<usize>,
    pub case_tag: CaseTag,
    /// `ℓ_{0,1}`, `ℓ_{0,2}`, `ℓ_{1,2}`.
    pub ell: [usize; 3],
    /// Common `|σ|`.
    pub n: usize,
}

/// Numbers (1-based) of the triple terms that evaluate to zero.
pub fn vanishing_terms(a0: &Element, a1: &Element, a2: &Element) -> Result<BTreeSet<usize>> {
    let p = a0.order_size();
    let assign = [a0.clone(), a1.clone(), a2.clone()];
    let mut out = BTreeSet::new();
    for (i, t) in triple_terms().iter().enumerate() {
        if t.eval(p, &assign)?.is_empty() {
            out.insert(i + 1);
        }
    }
    Ok(out)
}

pub fn case_for(ell_12: usize, n: usize) -> CaseTag {
    if ell_12 != 0 && ell_12 + 1 != n - 1 {
        CaseTag::Case1
    } else {
        CaseTag::Case2
    }
}

pub fn classify_triple(a0: &Element, a1: &Element, a2: &Element) -> Result<TripleClassification> {
    let seq = [a0.clone(), a1.clone(), a2.clone()];
    let table =
        check_homogeneous(&seq).map_err(|v| Error::input(format!("triple is not homogeneous: {v}")))?;
    let n = a0.sigma_size();
    let ell = [table.get(0, 1), table.get(0, 2), table.get(1, 2)];
    let vanishing = vanishing_terms(a0, a1, a2)?;
    if vanishing.is_empty() {
        return Err(Error::Consistency(format!(
            "no triple term vanishes on ({a0}, {a1}, {a2}) over order size {}",
            a0.order_size()
        )));
    }
    Ok(TripleClassification { vanishing, case_tag: case_for(ell[2], n), ell, n })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub order_size: usize,
    pub elements: [Vec<ExtPoint>; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma16Report {
    pub max_order: usize,
    pub max_k: usize,
    pub triples: u64,
    pub case1: u64,
    pub case2: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Default)]
struct Tally {
    triples: u64,
    case1: u64,
    case2: u64,
    counterexamples: Vec<Counterexample>,
}

/// Every ordered homogeneous triple over orders of size `0..=max_p` whose
/// common `|σ|` is at most `max_k`, with no symmetry reduction.
pub fn verify_lemma16(max_p: usize, max_k: usize) -> Result<Lemma16Report> {
    if max_p > MAX_SWEEP_ORDER {
        return Err(Error::Capacity { what: "sweep order size", got: max_p, limit: MAX_SWEEP_ORDER });
    }
    if max_k > MAX_SWEEP_SIGMA {
        return Err(Error::Capacity { what: "sweep |σ|", got: max_k, limit: MAX_SWEEP_SIGMA });
    }
    let mut total = Tally::default();
    for p in 0..=max_p {
        let all: Vec<Element> = (0u32..1 << p)
            .map(|mask| {
                Element::from_point_set(p, (0..p).filter(|i| mask >> i & 1 == 1)).expect("points in range")
            })
            .collect();
        // clauses 1 and 2 split the elements into classes
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for k in 2..=max_k {
            for pattern in [(false, false), (false, true), (true, false), (true, true)] {
                let class: Vec<Element> = all
                    .iter()
                    .filter(|a| a.sigma_size() == k && a.infinity_pattern() == pattern)
                    .cloned()
                    .collect();
                if !class.is_empty() {
                    classes.push(class);
                }
            }
        }
        for class in &classes {
            let vs: Vec<Vec<ExtPoint>> = class.iter().map(Element::vec_sigma).collect();
            let tallies: Vec<Tally> =
                (0..class.len()).into_par_iter().map(|i| sweep_from(class, &vs, i)).collect();
            for t in tallies {
                total.triples += t.triples;
                total.case1 += t.case1;
                total.case2 += t.case2;
                total.counterexamples.extend(t.counterexamples);
            }
        }
    }
    Ok(Lemma16Report {
        max_order: max_p,
        max_k,
        triples: total.triples,
        case1: total.case1,
        case2: total.case2,
        counterexamples: total.counterexamples,
    })
}

fn sweep_from(class: &[Element], vs: &[Vec<ExtPoint>], i: usize) -> Tally {
    let mut tally = Tally::default();
    let n = class[i].sigma_size();
    for (j, a1) in class.iter().enumerate() {
        if nesting_gap(&vs[i], a1).is_none() {
            continue;
        }
        for a2 in class {
            if nesting_gap(&vs[i], a2).is_none() {
                continue;
            }
            let Some(ell_12) = nesting_gap(&vs[j], a2) else {
                continue;
            };
            tally.triples += 1;
            match case_for(ell_12, n) {
                CaseTag::Case1 => tally.case1 += 1,
                CaseTag::Case2 => tally.case2 += 1,
            }
            let vanishing = vanishing_terms(&class[i], a1, a2).expect("one order size");
            if vanishing.is_empty() {
                tally.counterexamples.push(Counterexample {
                    order_size: class[i].order_size(),
                    elements: [
                        class[i].endpoints().to_vec(),
                        a1.endpoints().to_vec(),
                        a2.endpoints().to_vec(),
                    ],
                });
            }
        }
    }
    tally
}
