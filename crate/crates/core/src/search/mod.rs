//! ℓ⃗-vectors, the pigeonhole over them, and searches for index tuples on
//! which the sextuple and quadruple terms vanish.

mod certificate;
pub mod pipeline;
pub mod ramsey;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

pub use certificate::{Certificate, CoordinateRecord, Method, Mode, Provenance, Side};
pub use pipeline::{pipeline, FlatCoordinate, InsufficientReport, PipelineLog, PipelineOutcome};
pub use ramsey::{ramsey_quad, ramsey_quad_naive, Coloring, MAX_RAMSEY_N};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::homogeneity::{check_homogeneous, EllTable};
use crate::product::{is_zero, Family};
use crate::terms::Term;

/// Per-coordinate `ℓ` tables of a homogeneous family, with the vectors
/// `ℓ⃗_{α,β} = ⟨ℓ^ζ_{α,β} : ζ < κ⟩` interned in order of first appearance.
#[derive(Clone, Debug)]
pub struct EllMatrix {
    len: usize,
    tables: Vec<EllTable>,
    gap_counts: Vec<usize>,
    ids: Vec<usize>,
    values: Vec<Vec<usize>>,
}

impl EllMatrix {
    fn slot(&self, alpha: usize, beta: usize) -> usize {
        assert!(alpha < beta && beta < self.len, "need α < β < {}", self.len);
        alpha * (2 * self.len - alpha - 1) / 2 + (beta - alpha - 1)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn kappa(&self) -> usize {
        self.tables.len()
    }

    pub fn table(&self, zeta: usize) -> &EllTable {
        &self.tables[zeta]
    }

    pub fn ell_at(&self, zeta: usize, alpha: usize, beta: usize) -> usize {
        self.tables[zeta].get(alpha, beta)
    }

    /// `ℓ⃗_{α,β}` for `α < β`.
    pub fn ell(&self, alpha: usize, beta: usize) -> &[usize] {
        &self.values[self.id(alpha, beta)]
    }

    /// Interned id of `ℓ⃗_{α,β}`.
    pub fn id(&self, alpha: usize, beta: usize) -> usize {
        self.ids[self.slot(alpha, beta)]
    }

    /// Distinct observed vectors, indexed by id.
    pub fn values(&self) -> &[Vec<usize>] {
        &self.values
    }

    /// `V`, the number of distinct observed `ℓ⃗`.
    pub fn distinct(&self) -> usize {
        self.values.len()
    }

    /// `∏ (n_ζ − 1)`, the number of possible `ℓ⃗`; `None` for an empty family
    /// (no `n_ζ` to read), saturating at `u64::MAX`.
    pub fn theoretical_max(&self) -> Option<u64> {
        (self.len > 0).then(|| self.gap_counts.iter().fold(1u64, |acc, &g| acc.saturating_mul(g as u64)))
    }
}

/// Builds the ℓ⃗ matrix, failing on the first non-homogeneous coordinate.
pub fn ell_matrix(fam: &Family) -> Result<EllMatrix> {
    let tables = (0..fam.kappa())
        .map(|zeta| {
            check_homogeneous(&fam.coordinate(zeta))
                .map_err(|violation| Error::NotHomogeneous { coordinate: zeta, violation })
        })
        .collect::<Result<Vec<_>>>()?;
    let len = fam.len();
    let gap_counts =
        if len > 0 { fam.member(0).iter().map(|a| a.sigma_size() - 1).collect() } else { Vec::new() };
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut values = Vec::new();
    let mut ids = Vec::with_capacity(len * len.saturating_sub(1) / 2);
    for alpha in 0..len {
        for beta in alpha + 1..len {
            let v: Vec<usize> = tables.iter().map(|t| t.get(alpha, beta)).collect();
            let id = *seen.entry(v.clone()).or_insert_with(|| {
                values.push(v);
                values.len() - 1
            });
            ids.push(id);
        }
    }
    Ok(EllMatrix { len, tables, gap_counts, ids, values })
}

/// Whether gap `ell` of `a`, `[vecσ(ℓ), vecσ(ℓ+1))`, lies inside `a`.
pub fn element_gap_side(a: &Element, ell: usize) -> Result<Side> {
    let vs = a.vec_sigma();
    if ell + 1 >= vs.len() {
        return Err(Error::input(format!("gap index {ell} out of range for |σ| = {}", vs.len())));
    }
    let start = vs[ell];
    let toggles = a.endpoints().iter().filter(|&&e| e <= start).count();
    Ok(if toggles % 2 == 1 { Side::Inside } else { Side::Outside })
}

pub fn gap_side(fam: &Family, zeta: usize, alpha: usize, ell: usize) -> Result<Side> {
    if alpha >= fam.len() || zeta >= fam.kappa() {
        return Err(Error::input(format!("no coordinate ({alpha}, {zeta}) in the family")));
    }
    element_gap_side(&fam.member(alpha)[zeta], ell)
}

/// Finite form of the anchor bookkeeping: `repeated[α]` lists the ℓ⃗ ids
/// that occur for at least two `β > α`, `anchors[id]` the `α` whose
/// `repeated` set contains `id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PigeonholeState {
    pub distinct_values: usize,
    pub theoretical_max: Option<u64>,
    pub values: Vec<Vec<usize>>,
    pub repeated: Vec<Vec<usize>>,
    pub anchors: BTreeMap<usize, Vec<usize>>,
}

pub fn pigeonhole_state(ells: &EllMatrix) -> PigeonholeState {
    let n = ells.len();
    let mut repeated = Vec::with_capacity(n);
    let mut anchors: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for alpha in 0..n {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for beta in alpha + 1..n {
            *counts.entry(ells.id(alpha, beta)).or_default() += 1;
        }
        let ids: Vec<usize> = counts.into_iter().filter(|&(_, c)| c >= 2).map(|(id, _)| id).collect();
        for &id in &ids {
            anchors.entry(id).or_default().push(alpha);
        }
        repeated.push(ids);
    }
    PigeonholeState {
        distinct_values: ells.distinct(),
        theoretical_max: ells.theoretical_max(),
        values: ells.values().to_vec(),
        repeated,
        anchors,
    }
}

/// Pairs whose `ℓ⃗` the mode's pattern ties together, as index positions
/// into the tuple.
fn pattern_pairs(mode: Mode) -> &'static [(usize, usize)] {
    match mode {
        Mode::Short => &[(0, 1), (0, 2), (3, 4), (3, 5)],
        Mode::Symmetric => &[(0, 1), (0, 2), (3, 4), (3, 5), (1, 2), (4, 5)],
        Mode::Quadruple => &[(0, 2), (0, 3), (1, 2), (1, 3)],
    }
}

/// Per-coordinate annotation: ℓ on the pattern pairs, and for pattern hits
/// the side of the anchor's gap.
fn annotator<'a>(
    fam: &'a Family,
    ells: &'a EllMatrix,
    mode: Mode,
    indices: &'a [usize],
    with_side: bool,
) -> impl Fn(usize) -> (Option<Vec<usize>>, Option<Side>) + 'a {
    move |zeta| {
        let pairs = pattern_pairs(mode);
        let ell: Vec<usize> = pairs.iter().map(|&(i, j)| ells.ell_at(zeta, indices[i], indices[j])).collect();
        let (anchor, _) = pairs[0];
        let side = with_side.then(|| gap_side(fam, zeta, indices[anchor], ell[0]).ok()).flatten();
        (Some(ell), side)
    }
}

fn provenance(
    fam: &Family,
    ells: &EllMatrix,
    mode: Mode,
    method: Method,
    anomalies: Vec<String>,
) -> Provenance {
    Provenance {
        method,
        family_seed: fam.seed(),
        members: fam.len(),
        distinct_ell: Some(ells.distinct()),
        theoretical_max: ells.theoretical_max(),
        required_members: Some(mode.required_members(ells.distinct())),
        anomalies,
        pipeline: None,
    }
}

/// Sextuples satisfying the short pattern
/// `ℓ⃗_{α0,α1} = ℓ⃗_{α0,α2} = ℓ⃗_{α3,α4} = ℓ⃗_{α3,α5}`, plus
/// `ℓ⃗_{α1,α2} = ℓ⃗_{α4,α5}` in symmetric mode, in lexicographic order.
/// `visit` returns true to stop.
fn walk_sextuple_patterns(ells: &EllMatrix, mode: Mode, mut visit: impl FnMut([usize; 6]) -> bool) {
    let n = ells.len();
    let symmetric = mode == Mode::Symmetric;
    for a0 in 0..n {
        for a1 in a0 + 1..n {
            let u = ells.id(a0, a1);
            for a2 in a1 + 1..n {
                if ells.id(a0, a2) != u {
                    continue;
                }
                let w = ells.id(a1, a2);
                for a3 in a2 + 1..n {
                    for a4 in a3 + 1..n {
                        if ells.id(a3, a4) != u {
                            continue;
                        }
                        for a5 in a4 + 1..n {
                            if ells.id(a3, a5) != u || (symmetric && ells.id(a4, a5) != w) {
                                continue;
                            }
                            if visit([a0, a1, a2, a3, a4, a5]) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Short or symmetric sextuple search on a per-coordinate homogeneous
/// family. Pattern candidates are tried in lexicographic order and accepted
/// only when the term evaluates to zero; if none does, the lexicographically
/// least vanishing sextuple from exhaustive enumeration is returned.
pub fn find_sextuple(fam: &Family, mode: Mode) -> Result<Option<Certificate>> {
    if mode == Mode::Quadruple {
        return Err(Error::input("find_sextuple takes short or symmetric mode"));
    }
    let ells = ell_matrix(fam)?;
    let term = mode.term();
    let mut hit = None;
    let mut rejected = 0usize;
    let mut first_rejected = None;
    let mut failure = None;
    walk_sextuple_patterns(&ells, mode, |q| match fam.vanishes(term, &q) {
        Ok(true) => {
            hit = Some(q);
            true
        }
        Ok(false) => {
            rejected += 1;
            first_rejected.get_or_insert(q);
            false
        }
        Err(e) => {
            failure = Some(e);
            true
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut anomalies = Vec::new();
    if rejected > 0 {
        anomalies.push(format!(
            "{rejected} pattern candidate(s) failed evaluation, first {:?}",
            first_rejected.expect("counted")
        ));
    }
    if let Some(q) = hit {
        let prov = provenance(fam, &ells, mode, Method::Pattern, anomalies);
        return certify_with(fam, &ells, mode, q.to_vec(), true, prov).map(Some);
    }
    match exhaustive_search(fam, term)? {
        Some(q) => {
            let prov = provenance(fam, &ells, mode, Method::Exhaustive, anomalies);
            certify_with(fam, &ells, mode, q, false, prov).map(Some)
        }
        None => Ok(None),
    }
}

fn certify_with(
    fam: &Family,
    ells: &EllMatrix,
    mode: Mode,
    indices: Vec<usize>,
    with_side: bool,
    prov: Provenance,
) -> Result<Certificate> {
    let idx = indices.clone();
    certificate::certify(fam, mode, indices, annotator(fam, ells, mode, &idx, with_side), prov)
}

/// Quadruple search on a per-coordinate homogeneous family: the least
/// cross-equal pattern under the colouring `ℓ⃗_{α,β}`, accepted only on
/// evaluation, else the least vanishing quadruple by exhaustive enumeration.
pub fn find_quadruple(fam: &Family) -> Result<Option<Certificate>> {
    let mode = Mode::Quadruple;
    let ells = ell_matrix(fam)?;
    let mut anomalies = Vec::new();
    if let Some(q) = ramsey_quad(ells.len(), |a, b| ells.id(a, b)) {
        if fam.vanishes(mode.term(), &q)? {
            let prov = provenance(fam, &ells, mode, Method::Pattern, anomalies);
            return certify_with(fam, &ells, mode, q.to_vec(), true, prov).map(Some);
        }
        anomalies.push(format!("pattern quadruple {q:?} failed evaluation"));
    }
    match exhaustive_search(fam, mode.term())? {
        Some(q) => {
            let prov = provenance(fam, &ells, mode, Method::Exhaustive, anomalies);
            certify_with(fam, &ells, mode, q, false, prov).map(Some)
        }
        None => Ok(None),
    }
}

/// Lexicographically least strictly increasing index tuple on which the
/// product term `t` vanishes, for any family. Conjuncts are applied as soon
/// as their variables are bound; a prefix that already forces zero is
/// completed with the next consecutive indices.
pub fn exhaustive_search(fam: &Family, t: &Term) -> Result<Option<Vec<usize>>> {
    let arity = t.num_vars();
    let n = fam.len();
    if arity > n {
        return Ok(None);
    }
    // conjuncts grouped by the last variable they mention
    let mut by_level: Vec<Vec<&Term>> = vec![Vec::new(); arity.max(1)];
    let mut closed = Vec::new();
    for c in t.conjuncts() {
        match c.num_vars() {
            0 => closed.push(c),
            v => by_level[v - 1].push(c),
        }
    }
    let mut start: Vec<Element> = fam.order_sizes().iter().map(|&p| Element::full(p)).collect();
    for c in &closed {
        for (zeta, acc) in start.iter_mut().enumerate() {
            *acc = acc.meet(&c.eval(fam.order_sizes()[zeta], &[])?)?;
        }
    }
    if arity == 0 {
        return Ok(is_zero(&start).then(Vec::new));
    }
    let search = Search { fam, arity, by_level: &by_level };
    Ok((0..=n - arity).into_par_iter().find_map_first(|a0| {
        let mut tuple = vec![a0];
        search.descend(&start, &mut tuple)
    }))
}

struct Search<'a> {
    fam: &'a Family,
    arity: usize,
    by_level: &'a [Vec<&'a Term>],
}

impl Search<'_> {
    /// `tuple` has just had its last entry bound; `prefix` is the product
    /// before applying that level's conjuncts.
    fn descend(&self, prefix: &[Element], tuple: &mut Vec<usize>) -> Option<Vec<usize>> {
        let level = tuple.len() - 1;
        let mut acc = prefix.to_vec();
        if !self.by_level[level].is_empty() {
            for (zeta, slot) in acc.iter_mut().enumerate() {
                let assign: Vec<Element> = tuple.iter().map(|&i| self.fam.member(i)[zeta].clone()).collect();
                for c in &self.by_level[level] {
                    let v = c.eval(self.fam.order_sizes()[zeta], &assign).expect("checked arity");
                    *slot = slot.meet(&v).expect("shared order size");
                }
            }
        }
        let last = tuple[level];
        if is_zero(&acc) {
            let mut out = tuple.clone();
            out.extend(last + 1..last + self.arity - tuple.len() + 1);
            return Some(out);
        }
        if tuple.len() == self.arity {
            return None;
        }
        let remaining = self.arity - tuple.len();
        for next in last + 1..=self.fam.len() - remaining {
            tuple.push(next);
            let found = self.descend(&acc, tuple);
            tuple.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Least vanishing sextuple for the mode's term on any family.
pub fn exhaustive_sextuple(fam: &Family, mode: Mode) -> Result<Option<Vec<usize>>> {
    exhaustive_search(fam, mode.term())
}

/// Least vanishing quadruple for `(x0△x1)·(x2△x3)` on any family.
pub fn exhaustive_quadruple(fam: &Family) -> Result<Option<Vec<usize>>> {
    exhaustive_search(fam, Mode::Quadruple.term())
}
