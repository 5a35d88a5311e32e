//! Homogeneous and semi-homogeneous sequences of interval-algebra elements.
//!
//! A sequence `⟨a_α⟩` is homogeneous when
//!
//! 1. every member has the same `|σ|`,
//! 2. every member has the same `σ⁻ ∩ {-inf, +inf}`, and
//! 3. for `α < β` all finite endpoints of `a_β` lie strictly inside one gap
//!    `(vecσ_α(ℓ), vecσ_α(ℓ+1))` of `a_α`; that `ℓ` is recorded in an
//!    [`EllTable`].
//!
//! It is semi-homogeneous when some cut sequence `-inf = t_0 < … < t_k = +inf`
//! makes every restriction to `[t_m, t_{m+1})` homogeneous.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, ExtPoint};
use crate::error::{Error, Result};
use crate::product::Family;

/// Candidate cap for [`find_partitioning_set`].
pub const MAX_CUT_CANDIDATES: usize = 20;

/// Family size cap for [`max_semi_homogeneous_subfamily`].
pub const MAX_EXHAUSTIVE_MEMBERS: usize = 12;

/// Which homogeneity clause failed, and where.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    OrderSize { index: usize, expected: usize, found: usize },
    SigmaSize { first: usize, second: usize, expected: usize, found: usize },
    InfinityPattern { first: usize, second: usize },
    NoCommonGap { alpha: usize, beta: usize },
}

impl Violation {
    /// Number of the violated homogeneity clause; 0 for mixed order sizes.
    pub fn clause(&self) -> u8 {
        match self {
            Violation::OrderSize { .. } => 0,
            Violation::SigmaSize { .. } => 1,
            Violation::InfinityPattern { .. } => 2,
            Violation::NoCommonGap { .. } => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OrderSize { index, expected, found } => {
                write!(f, "member {index} has order size {found}, expected {expected}")
            }
            Violation::SigmaSize { first, second, expected, found } => {
                write!(f, "clause 1: |σ| of member {second} is {found}, member {first} has {expected}")
            }
            Violation::InfinityPattern { first, second } => {
                write!(f, "clause 2: members {first} and {second} differ on σ⁻ ∩ {{±inf}}")
            }
            Violation::NoCommonGap { alpha, beta } => {
                write!(f, "clause 3: endpoints of member {beta} are not inside one gap of member {alpha}")
            }
        }
    }
}

/// `ℓ_{α,β}` for every pair `α < β` of a homogeneous sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllTable {
    len: usize,
    values: Vec<usize>,
}

impl EllTable {
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

    pub fn get(&self, alpha: usize, beta: usize) -> usize {
        self.values[self.slot(alpha, beta)]
    }

    /// `(α, β, ℓ_{α,β})` in lexicographic order of pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len)
            .flat_map(move |a| (a + 1..self.len).map(move |b| (a, b)))
            .map(move |(a, b)| (a, b, self.get(a, b)))
    }
}

/// The gap of `vec_sigma` strictly containing every finite endpoint of
/// `inner`. No finite endpoints means gap 0.
pub fn nesting_gap(vec_sigma: &[ExtPoint], inner: &Element) -> Option<usize> {
    let mut finite = inner.finite_endpoints();
    let Some(first) = finite.next() else {
        return Some(0);
    };
    let last = finite.last().unwrap_or(first);
    let above = vec_sigma.partition_point(|&x| x < first);
    if above == 0 || above == vec_sigma.len() || vec_sigma[above] == first {
        return None;
    }
    (last < vec_sigma[above]).then_some(above - 1)
}

/// Checks the three homogeneity clauses on the sequence in the given order.
pub fn check_homogeneous(seq: &[Element]) -> Result<EllTable, Violation> {
    let Some(head) = seq.first() else {
        return Ok(EllTable { len: 0, values: Vec::new() });
    };
    let p = head.order_size();
    if let Some((index, a)) = seq.iter().enumerate().find(|(_, a)| a.order_size() != p) {
        return Err(Violation::OrderSize { index, expected: p, found: a.order_size() });
    }
    let k = head.sigma_size();
    if let Some((second, a)) = seq.iter().enumerate().find(|(_, a)| a.sigma_size() != k) {
        return Err(Violation::SigmaSize { first: 0, second, expected: k, found: a.sigma_size() });
    }
    let pattern = head.infinity_pattern();
    if let Some(second) = seq.iter().position(|a| a.infinity_pattern() != pattern) {
        return Err(Violation::InfinityPattern { first: 0, second });
    }
    let mut values = Vec::with_capacity(seq.len() * seq.len().saturating_sub(1) / 2);
    for (alpha, outer) in seq.iter().enumerate() {
        let vs = outer.vec_sigma();
        for (beta, inner) in seq.iter().enumerate().skip(alpha + 1) {
            values.push(nesting_gap(&vs, inner).ok_or(Violation::NoCommonGap { alpha, beta })?);
        }
    }
    Ok(EllTable { len: seq.len(), values })
}

/// Incremental homogeneity test for appending to a sequence.
#[derive(Clone, Debug, Default)]
struct HomogeneousTail {
    shape: Option<(usize, (bool, bool))>,
    vec_sigmas: Vec<Vec<ExtPoint>>,
}

impl HomogeneousTail {
    fn accepts(&self, a: &Element) -> bool {
        match self.shape {
            None => true,
            Some(shape) => {
                shape == (a.sigma_size(), a.infinity_pattern())
                    && self.vec_sigmas.iter().all(|vs| nesting_gap(vs, a).is_some())
            }
        }
    }

    fn push(&mut self, a: &Element) {
        self.shape.get_or_insert((a.sigma_size(), a.infinity_pattern()));
        self.vec_sigmas.push(a.vec_sigma());
    }
}

/// Cut points `-inf = t_0 < … < t_k = +inf` for one coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitioningSet {
    cuts: Vec<ExtPoint>,
}

impl PartitioningSet {
    pub fn new(order_size: usize, cuts: Vec<ExtPoint>) -> Result<Self> {
        if cuts.first() != Some(&ExtPoint::MinusInf) || cuts.last() != Some(&ExtPoint::PlusInf) {
            return Err(Error::input("partitioning set must run from -inf to +inf"));
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("partitioning set must be strictly increasing"));
        }
        if cuts.contains(&ExtPoint::Pt(0)) {
            return Err(Error::input("0 coincides with -inf and cannot be a cut"));
        }
        if let Some(bad) = cuts.iter().find(|c| matches!(c, ExtPoint::Pt(i) if *i >= order_size)) {
            return Err(Error::input(format!("cut {bad} is outside an order of size {order_size}")));
        }
        Ok(PartitioningSet { cuts })
    }

    pub fn trivial() -> Self {
        PartitioningSet { cuts: vec![ExtPoint::MinusInf, ExtPoint::PlusInf] }
    }

    pub fn cuts(&self) -> &[ExtPoint] {
        &self.cuts
    }

    /// Number of segments `k`.
    pub fn segment_count(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn segments(&self) -> impl Iterator<Item = (ExtPoint, ExtPoint)> + '_ {
        self.cuts.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentReport {
    pub lo: ExtPoint,
    pub hi: ExtPoint,
    pub order_size: usize,
    pub result: Result<EllTable, Violation>,
}

/// Per-segment homogeneity results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiReport {
    pub segments: Vec<SegmentReport>,
}

impl SemiReport {
    pub fn is_semi_homogeneous(&self) -> bool {
        self.segments.iter().all(|s| s.result.is_ok())
    }
}

fn restrict_all(seq: &[Element], lo: ExtPoint, hi: ExtPoint) -> Vec<Element> {
    seq.iter().map(|a| a.restrict(lo, hi).expect("validated segment")).collect()
}

pub fn check_semi_homogeneous(
    order_size: usize,
    seq: &[Element],
    parts: &PartitioningSet,
) -> Result<SemiReport> {
    let parts = PartitioningSet::new(order_size, parts.cuts.clone())?;
    if let Some(a) = seq.iter().find(|a| a.order_size() != order_size) {
        return Err(Error::input(format!(
            "element over order size {} in a sequence over {order_size}",
            a.order_size()
        )));
    }
    let segments = parts
        .segments()
        .map(|(lo, hi)| SegmentReport {
            lo,
            hi,
            order_size: hi.position(order_size) - lo.position(order_size),
            result: check_homogeneous(&restrict_all(seq, lo, hi)),
        })
        .collect();
    Ok(SemiReport { segments })
}

fn cut_candidates(seq: &[Element]) -> Vec<ExtPoint> {
    seq.iter().flat_map(|a| a.finite_endpoints()).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Minimal-size partitioning set drawn from the members' finite endpoints,
/// lexicographically least among minimal ones.
pub fn find_partitioning_set(order_size: usize, seq: &[Element]) -> Result<Option<PartitioningSet>> {
    if let Some(a) = seq.iter().find(|a| a.order_size() != order_size) {
        return Err(Error::input(format!(
            "element over order size {} in a sequence over {order_size}",
            a.order_size()
        )));
    }
    let candidates = cut_candidates(seq).len();
    if candidates > MAX_CUT_CANDIDATES {
        return Err(Error::Capacity {
            what: "partitioning candidates",
            got: candidates,
            limit: MAX_CUT_CANDIDATES,
        });
    }
    Ok(shortest_partition(seq))
}

/// Shortest path from `-inf` to `+inf` through candidate cuts, where an edge
/// is a segment on which the restricted sequence is homogeneous. Choosing the
/// smallest feasible successor at each step gives the lexicographically least
/// among the shortest paths.
fn shortest_partition(seq: &[Element]) -> Option<PartitioningSet> {
    let mut nodes = vec![ExtPoint::MinusInf];
    nodes.extend(cut_candidates(seq));
    nodes.push(ExtPoint::PlusInf);
    let m = nodes.len();
    let edge = |i: usize, j: usize| check_homogeneous(&restrict_all(seq, nodes[i], nodes[j])).is_ok();

    let mut valid = vec![vec![false; m]; m];
    let mut dist = vec![usize::MAX; m];
    dist[m - 1] = 0;
    for i in (0..m - 1).rev() {
        for j in i + 1..m {
            if dist[j] != usize::MAX && edge(i, j) {
                valid[i][j] = true;
                dist[i] = dist[i].min(dist[j] + 1);
            }
        }
    }
    if dist[0] == usize::MAX {
        return None;
    }
    let mut cuts = vec![nodes[0]];
    let mut at = 0;
    while at != m - 1 {
        at = (at + 1..m).find(|&j| valid[at][j] && dist[j] + 1 == dist[at]).expect("shortest path continues");
        cuts.push(nodes[at]);
    }
    Some(PartitioningSet { cuts })
}

/// Whether `c ⊆ A ∪ {±inf}` is an `A`-partition of `a`: it contains `±inf`
/// and `σ_a ∩ A`, and meets every open gap of `a` that `A` meets.
pub fn is_a_partition(c: &BTreeSet<ExtPoint>, a: &Element, points: &BTreeSet<usize>) -> Result<bool> {
    if let Some(bad) = c.iter().find(|x| matches!(x, ExtPoint::Pt(i) if !points.contains(i))) {
        return Err(Error::input(format!("{bad} is not in A ∪ {{±inf}}")));
    }
    if !c.contains(&ExtPoint::MinusInf) || !c.contains(&ExtPoint::PlusInf) {
        return Ok(false);
    }
    let vs = a.vec_sigma();
    if vs.iter().any(|s| matches!(s, ExtPoint::Pt(i) if points.contains(i)) && !c.contains(s)) {
        return Ok(false);
    }
    let p = a.order_size();
    for gap in vs.windows(2) {
        let open =
            (gap[0].position(p) + usize::from(!matches!(gap[0], ExtPoint::MinusInf)))..gap[1].position(p);
        let meets_a = points.range(open.clone()).next().is_some();
        let meets_c = c.iter().any(|x| matches!(x, ExtPoint::Pt(i) if open.contains(i)));
        if meets_a && !meets_c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random homogeneous sequence of `n` elements with `|σ| = k` over an order
/// of size `p`. Each member's finite endpoints sit in a gap of its
/// predecessor that stays inside every earlier member's chosen gap, so the
/// nesting is inherited by all later members.
///
/// Needs `n·(k−2) ≤ p−1` legal finite endpoint positions.
pub fn gen_homogeneous(seed: u64, p: usize, n: usize, k: usize) -> Result<Vec<Element>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_homogeneous_with(&mut rng, p, n, k)
}

pub fn gen_homogeneous_with<R: Rng>(rng: &mut R, p: usize, n: usize, k: usize) -> Result<Vec<Element>> {
    if k < 2 {
        return Err(Error::input("|σ| is at least 2"));
    }
    let f = k - 2;
    let usable = p.saturating_sub(1);
    if n * f > usable {
        return Err(Error::Capacity { what: "finite endpoints needed", got: n * f, limit: usable });
    }
    // σ⁻ has even size, so the infinite endpoints make up the parity of f.
    let (minus, plus) = if f % 2 == 1 {
        if rng.gen_bool(0.5) {
            (true, false)
        } else {
            (false, true)
        }
    } else if p > 0 && rng.gen_bool(0.5) {
        (true, true)
    } else {
        (false, false)
    };

    // usable positions [lo, hi]; the region is open towards ±inf while lo == 1 / hi == p-1
    let (mut lo, mut hi) = (1usize, usable);
    let (mut open_left, mut open_right) = (true, true);
    let mut out = Vec::with_capacity(n);
    for level in 0..n {
        let reserve = (n - 1 - level) * f;
        let room = hi + 1 - lo;
        let mut gaps: Vec<usize> = (1..f).collect();
        if open_left || f == 0 {
            gaps.push(0);
        }
        if open_right && f > 0 {
            gaps.push(f);
        }
        let gap = gaps[rng.gen_range(0..gaps.len())];
        let mut spaces = random_composition(rng, room - f - reserve, f + 1);
        spaces[gap] += reserve;

        let mut endpoints = Vec::with_capacity(f + 2);
        if minus {
            endpoints.push(ExtPoint::MinusInf);
        }
        let mut at = lo;
        let mut finite = Vec::with_capacity(f);
        for space in &spaces[..f] {
            at += space;
            finite.push(at);
            at += 1;
        }
        endpoints.extend(finite.iter().map(|&i| ExtPoint::Pt(i)));
        if plus {
            endpoints.push(ExtPoint::PlusInf);
        }
        out.push(Element::new(p, endpoints)?);

        if f > 0 {
            let new_lo = if gap == 0 { lo } else { finite[gap - 1] + 1 };
            let new_hi = if gap == f { hi } else { finite[gap] - 1 };
            open_left &= gap == 0;
            open_right &= gap == f;
            lo = new_lo;
            hi = new_hi;
        }
    }
    Ok(out)
}

/// `parts` nonnegative integers summing to `total`, uniformly over compositions.
fn random_composition<R: Rng>(rng: &mut R, total: usize, parts: usize) -> Vec<usize> {
    let mut bars: Vec<usize> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    bars.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for b in bars {
        out.push(b - prev);
        prev = b;
    }
    out.push(total - prev);
    out
}

/// A subfamily together with one partitioning set per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub subset: Vec<usize>,
    pub parts: Vec<PartitioningSet>,
}

/// Per-coordinate `(σ⁻ ∩ {±inf}, n_a)` signature of a member.
fn signature(member: &[Element]) -> Signature {
    member.iter().map(|a| (a.infinity_pattern(), a.sigma_size())).collect()
}

/// Partitioning sets making every coordinate of `fam` restricted to `subset`
/// semi-homogeneous, if they exist among the endpoint candidates.
pub fn semi_homogeneous_parts(fam: &Family, subset: &[usize]) -> Option<Vec<PartitioningSet>> {
    (0..fam.kappa())
        .map(|zeta| {
            let seq: Vec<Element> = subset.iter().map(|&i| fam.member(i)[zeta].clone()).collect();
            shortest_partition(&seq)
        })
        .collect()
}

/// Greedy grower for one start index; keeps per-segment tails so that the
/// common case (current partition still works) costs one gap lookup per
/// earlier member.
struct Grower<'a> {
    fam: &'a Family,
    subset: Vec<usize>,
    parts: Vec<PartitioningSet>,
    tails: Vec<Vec<HomogeneousTail>>,
}

impl<'a> Grower<'a> {
    fn new(fam: &'a Family) -> Self {
        let parts = vec![PartitioningSet::trivial(); fam.kappa()];
        let mut g = Grower { fam, subset: Vec::new(), parts, tails: Vec::new() };
        g.rebuild_tails();
        g
    }

    fn pieces(&self, alpha: usize, zeta: usize) -> Vec<Element> {
        let a = &self.fam.member(alpha)[zeta];
        self.parts[zeta].segments().map(|(lo, hi)| a.restrict(lo, hi).expect("valid segment")).collect()
    }

    fn rebuild_tails(&mut self) {
        self.tails = (0..self.fam.kappa())
            .map(|zeta| vec![HomogeneousTail::default(); self.parts[zeta].segment_count()])
            .collect();
        for i in 0..self.subset.len() {
            self.push_tails(self.subset[i]);
        }
    }

    fn push_tails(&mut self, alpha: usize) {
        for zeta in 0..self.fam.kappa() {
            let pieces = self.pieces(alpha, zeta);
            for (tail, piece) in self.tails[zeta].iter_mut().zip(&pieces) {
                tail.push(piece);
            }
        }
    }

    fn try_add(&mut self, alpha: usize) -> bool {
        let fits = (0..self.fam.kappa()).all(|zeta| {
            self.pieces(alpha, zeta).iter().zip(&self.tails[zeta]).all(|(piece, tail)| tail.accepts(piece))
        });
        if fits {
            self.subset.push(alpha);
            self.push_tails(alpha);
            return true;
        }
        let mut candidate = self.subset.clone();
        candidate.push(alpha);
        match semi_homogeneous_parts(self.fam, &candidate) {
            Some(parts) => {
                self.subset = candidate;
                self.parts = parts;
                self.rebuild_tails();
                true
            }
            None => false,
        }
    }
}

/// Per-coordinate `±inf` pattern and `|σ|`.
type Signature = Vec<((bool, bool), usize)>;

/// Finite extraction of a large semi-homogeneous subfamily: members are grouped by
/// their per-coordinate `±inf` pattern and `|σ|` vector (any semi-homogeneous
/// subfamily lies inside one group), then each group is grown greedily in
/// index order from every possible start. The largest result wins, ties going
/// to the lexicographically least index list. The returned partitioning sets
/// are the minimal ones for the chosen subset.
pub fn extract_semi_homogeneous(fam: &Family) -> Extraction {
    let mut classes: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
    for alpha in 0..fam.len() {
        classes.entry(signature(fam.member(alpha))).or_default().push(alpha);
    }
    let mut best: Vec<usize> = Vec::new();
    for class in classes.values() {
        for (start, &first) in class.iter().enumerate() {
            if class.len() - start < best.len() {
                break;
            }
            let mut g = Grower::new(fam);
            g.try_add(first);
            for &alpha in &class[start + 1..] {
                g.try_add(alpha);
            }
            if g.subset.len() > best.len() || (g.subset.len() == best.len() && g.subset < best) {
                best = g.subset;
            }
            if best.len() == class.len() {
                break;
            }
        }
    }
    let parts = semi_homogeneous_parts(fam, &best).expect("greedy subsets are semi-homogeneous");
    Extraction { subset: best, parts }
}

/// Exhaustive maximum semi-homogeneous subfamily (lexicographically least
/// among the largest), for families of at most [`MAX_EXHAUSTIVE_MEMBERS`].
pub fn max_semi_homogeneous_subfamily(fam: &Family) -> Result<Vec<usize>> {
    if fam.len() > MAX_EXHAUSTIVE_MEMBERS {
        return Err(Error::Capacity {
            what: "members for exhaustive extraction",
            got: fam.len(),
            limit: MAX_EXHAUSTIVE_MEMBERS,
        });
    }
    fn walk(fam: &Family, next: usize, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if current.len() > best.len() || (current.len() == best.len() && *current < *best) {
            *best = current.clone();
        }
        if current.len() + (fam.len() - next) < best.len() {
            return;
        }
        for alpha in next..fam.len() {
            current.push(alpha);
            // semi-homogeneity is inherited by subsets, so dead ends can be cut
            if semi_homogeneous_parts(fam, current).is_some() {
                walk(fam, alpha + 1, current, best);
            }
            current.pop();
        }
    }
    let mut best = Vec::new();
    walk(fam, 0, &mut Vec::new(), &mut best);
    Ok(best)
}
