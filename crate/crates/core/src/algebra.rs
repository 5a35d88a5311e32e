//! Interval Boolean algebras over finite linear orders.
//!
//! A finite linear order of size `p` is always taken to be `{0, 1, …, p-1}`.
//! Its interval algebra consists of finite unions of half-open intervals
//! `[s, t)` whose endpoints come from the extended order
//! `-inf < 0 < 1 < … < p-1 < +inf`.
//!
//! Every element has exactly one canonical representation
//! `[s0, s1) ∪ [s2, s3) ∪ … ∪ [s(2n-2), s(2n-1))` with strictly increasing
//! endpoints drawn from `I* = {-inf, +inf} ∪ {1, …, p-1}`. The point `0` is
//! never an endpoint: an interval starting at the minimum is written with
//! `-inf` instead. [`Element`] stores this endpoint list and nothing else.
//!
//! Internally every endpoint is mapped to a *position* in `0..=p`
//! (`-inf ↦ 0`, `i ↦ i`, `+inf ↦ p`). In position space the canonical list is
//! simply the sorted list of places where membership toggles, and all Boolean
//! operations become a single merge of two sorted lists.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("order sizes differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("point {point} is outside an order of size {order_size}")]
    PointOutOfRange { point: usize, order_size: usize },
    #[error("invalid endpoint list: {0}")]
    InvalidEndpoints(String),
    #[error("empty restriction range: {lo} is not below {hi}")]
    EmptyRange { lo: ExtPoint, hi: ExtPoint },
}

/// A point of the extended order `I⁺ = I ∪ {-inf, +inf}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtPoint {
    MinusInf,
    Pt(usize),
    PlusInf,
}

impl ExtPoint {
    pub fn is_infinite(self) -> bool {
        !matches!(self, ExtPoint::Pt(_))
    }

    /// Position of the point in `0..=order_size`.
    pub fn position(self, order_size: usize) -> usize {
        match self {
            ExtPoint::MinusInf => 0,
            ExtPoint::Pt(i) => i,
            ExtPoint::PlusInf => order_size,
        }
    }

    /// Inverse of [`ExtPoint::position`] on legal endpoints: `0` is `-inf`,
    /// `order_size` is `+inf`.
    pub fn from_position(pos: usize, order_size: usize) -> ExtPoint {
        if pos == 0 {
            ExtPoint::MinusInf
        } else if pos >= order_size {
            ExtPoint::PlusInf
        } else {
            ExtPoint::Pt(pos)
        }
    }

    /// Membership in `I*` for an order of the given size.
    pub fn is_legal_endpoint(self, order_size: usize) -> bool {
        match self {
            ExtPoint::Pt(i) => i >= 1 && i < order_size,
            _ => true,
        }
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::MinusInf => f.write_str("-inf"),
            ExtPoint::Pt(i) => write!(f, "{i}"),
            ExtPoint::PlusInf => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtPoint::MinusInf => serializer.serialize_str("-inf"),
            ExtPoint::PlusInf => serializer.serialize_str("+inf"),
            ExtPoint::Pt(i) => serializer.serialize_u64(*i as u64),
        }
    }
}

impl<'de> Deserialize<'de> for ExtPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PointVisitor;

        impl Visitor<'_> for PointVisitor {
            type Value = ExtPoint;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"-inf\", \"+inf\" or a non-negative integer")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtPoint, E> {
                usize::try_from(v).map(ExtPoint::Pt).map_err(|_| E::custom("endpoint does not fit in usize"))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtPoint, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom(format!("negative endpoint {v}")))
                    .and_then(|v| self.visit_u64(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtPoint, E> {
                match v {
                    "-inf" => Ok(ExtPoint::MinusInf),
                    "+inf" => Ok(ExtPoint::PlusInf),
                    other => Err(E::custom(format!("unknown endpoint {other:?}"))),
                }
            }
        }

        deserializer.deserialize_any(PointVisitor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Meet,
    Join,
    SymDiff,
}

impl BinOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BinOp::Meet => a && b,
            BinOp::Join => a || b,
            BinOp::SymDiff => a != b,
        }
    }
}

/// An element of the interval algebra `B(I)` of a finite order, kept in
/// canonical endpoint form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    order_size: usize,
    endpoints: Vec<ExtPoint>,
}

impl Element {
    /// Validates a canonical endpoint list.
    pub fn new(order_size: usize, endpoints: Vec<ExtPoint>) -> Result<Self, AlgebraError> {
        if !endpoints.len().is_multiple_of(2) {
            return Err(AlgebraError::InvalidEndpoints(format!(
                "odd number of endpoints ({})",
                endpoints.len()
            )));
        }
        if order_size == 0 && !endpoints.is_empty() {
            return Err(AlgebraError::InvalidEndpoints(
                "the empty order admits only the empty element".into(),
            ));
        }
        for &e in &endpoints {
            if !e.is_legal_endpoint(order_size) {
                return Err(AlgebraError::InvalidEndpoints(format!(
                    "{e} is not a legal endpoint for order size {order_size}"
                )));
            }
        }
        if let Some(w) = endpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(AlgebraError::InvalidEndpoints(format!(
                "endpoints not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        Ok(Element { order_size, endpoints })
    }

    pub fn empty(order_size: usize) -> Self {
        Element { order_size, endpoints: Vec::new() }
    }

    /// The top element `[-inf, +inf)`; for the empty order this is the empty element.
    pub fn full(order_size: usize) -> Self {
        if order_size == 0 {
            Self::empty(0)
        } else {
            Element { order_size, endpoints: vec![ExtPoint::MinusInf, ExtPoint::PlusInf] }
        }
    }

    pub fn from_point_set<I>(order_size: usize, points: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut member = vec![false; order_size];
        for point in points {
            if point >= order_size {
                return Err(AlgebraError::PointOutOfRange { point, order_size });
            }
            member[point] = true;
        }
        let mut toggles = Vec::new();
        let mut inside = false;
        for (pos, &m) in member.iter().enumerate() {
            if m != inside {
                toggles.push(pos);
                inside = m;
            }
        }
        if inside {
            toggles.push(order_size);
        }
        Ok(Self::from_toggles(order_size, &toggles))
    }

    fn from_toggles(order_size: usize, toggles: &[usize]) -> Self {
        Element {
            order_size,
            endpoints: toggles.iter().map(|&t| ExtPoint::from_position(t, order_size)).collect(),
        }
    }

    pub(crate) fn toggles(&self) -> impl Iterator<Item = usize> + '_ {
        self.endpoints.iter().map(move |e| e.position(self.order_size))
    }

    pub fn order_size(&self) -> usize {
        self.order_size
    }

    pub fn endpoints(&self) -> &[ExtPoint] {
        &self.endpoints
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.order_size)
    }

    pub fn contains(&self, point: usize) -> bool {
        point < self.order_size && self.toggles().take_while(|&t| t <= point).count() % 2 == 1
    }

    pub fn to_point_set(&self) -> BTreeSet<usize> {
        let toggles: Vec<usize> = self.toggles().collect();
        toggles.chunks(2).flat_map(|run| run[0]..run[1]).collect()
    }

    /// Number of points of the order that belong to the element.
    pub fn point_count(&self) -> usize {
        let toggles: Vec<usize> = self.toggles().collect();
        toggles.chunks(2).map(|run| run[1] - run[0]).sum()
    }

    /// The intervals `[s, t)` of the canonical representation.
    pub fn intervals(&self) -> impl Iterator<Item = (ExtPoint, ExtPoint)> + '_ {
        self.endpoints.chunks(2).map(|c| (c[0], c[1]))
    }

    pub fn binop(&self, op: BinOp, other: &Element) -> Result<Element, AlgebraError> {
        if self.order_size != other.order_size {
            return Err(AlgebraError::OrderMismatch { left: self.order_size, right: other.order_size });
        }
        Ok(self.combine(other, op))
    }

    pub fn meet(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.binop(BinOp::Meet, other)
    }

    pub fn join(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.binop(BinOp::Join, other)
    }

    pub fn symdiff(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.binop(BinOp::SymDiff, other)
    }

    pub fn complement(&self) -> Element {
        self.combine(&Self::full(self.order_size), BinOp::SymDiff)
    }

    /// Sweep over both toggle lists at once. `op(false, false)` is false for
    /// every operation, so the output starts and ends outside the element.
    fn combine(&self, other: &Element, op: BinOp) -> Element {
        debug_assert_eq!(self.order_size, other.order_size);
        let p = self.order_size;
        let a: Vec<usize> = self.toggles().collect();
        let b: Vec<usize> = other.toggles().collect();
        let (mut i, mut j) = (0, 0);
        let (mut in_a, mut in_b, mut in_out) = (false, false, false);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let x = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) => x.min(y),
                (Some(&x), None) => x,
                (None, Some(&y)) => y,
                (None, None) => unreachable!(),
            };
            if a.get(i) == Some(&x) {
                in_a = !in_a;
                i += 1;
            }
            if b.get(j) == Some(&x) {
                in_b = !in_b;
                j += 1;
            }
            let now = op.apply(in_a, in_b);
            if now != in_out {
                out.push(x);
                in_out = now;
            }
        }
        Self::from_toggles(p, &out)
    }

    pub fn sigma(&self) -> Sigma {
        let sigma_minus: BTreeSet<ExtPoint> = self.endpoints.iter().copied().collect();
        let mut sigma = sigma_minus.clone();
        sigma.insert(ExtPoint::MinusInf);
        sigma.insert(ExtPoint::PlusInf);
        let vec_sigma: Vec<ExtPoint> = sigma.iter().copied().collect();
        Sigma { n_a: vec_sigma.len(), sigma_minus, sigma, vec_sigma }
    }

    /// `vecσ`: the endpoints together with `±inf`, in increasing order.
    pub fn vec_sigma(&self) -> Vec<ExtPoint> {
        let mut v = Vec::with_capacity(self.endpoints.len() + 2);
        if self.endpoints.first() != Some(&ExtPoint::MinusInf) {
            v.push(ExtPoint::MinusInf);
        }
        v.extend_from_slice(&self.endpoints);
        if self.endpoints.last() != Some(&ExtPoint::PlusInf) {
            v.push(ExtPoint::PlusInf);
        }
        v
    }

    /// `n_a = |σ_a|`.
    pub fn sigma_size(&self) -> usize {
        self.endpoints.iter().filter(|e| !e.is_infinite()).count() + 2
    }

    pub fn finite_endpoints(&self) -> impl Iterator<Item = ExtPoint> + '_ {
        self.endpoints.iter().copied().filter(|e| !e.is_infinite())
    }

    /// `σ⁻ ∩ {-inf, +inf}` as a pair of flags.
    pub fn infinity_pattern(&self) -> (bool, bool) {
        (
            self.endpoints.first() == Some(&ExtPoint::MinusInf),
            self.endpoints.last() == Some(&ExtPoint::PlusInf),
        )
    }

    /// Intersects with `[lo, hi)` and re-indexes the suborder
    /// `{x ∈ I : lo ≤ x < hi}` as `0..(hi - lo)`.
    pub fn restrict(&self, lo: ExtPoint, hi: ExtPoint) -> Result<Element, AlgebraError> {
        if lo >= hi {
            return Err(AlgebraError::EmptyRange { lo, hi });
        }
        for e in [lo, hi] {
            if let ExtPoint::Pt(point) = e {
                if point >= self.order_size {
                    return Err(AlgebraError::PointOutOfRange { point, order_size: self.order_size });
                }
            }
        }
        let lo = lo.position(self.order_size);
        let hi = hi.position(self.order_size);
        let sub = hi - lo;
        let mut out = Vec::new();
        let mut parity = false;
        for t in self.toggles() {
            if t <= lo {
                parity = !parity;
            } else if t < hi {
                if out.is_empty() && parity {
                    out.push(0);
                }
                out.push(t - lo);
            } else {
                break;
            }
        }
        if out.is_empty() && parity && sub > 0 {
            out.push(0);
        }
        if out.len() % 2 == 1 {
            out.push(sub);
        }
        Ok(Self::from_toggles(sub, &out))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.order_size)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        for (i, (s, t)) in self.intervals().enumerate() {
            if i > 0 {
                f.write_str("∪")?;
            }
            write!(f, "[{s},{t})")?;
        }
        Ok(())
    }
}

/// The endpoint bookkeeping of an element: `σ⁻`, `σ`, `n_a` and `vecσ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma {
    pub sigma_minus: BTreeSet<ExtPoint>,
    pub sigma: BTreeSet<ExtPoint>,
    pub n_a: usize,
    pub vec_sigma: Vec<ExtPoint>,
}

/// A Boolean algebra in which terms can be evaluated.
pub trait BooleanAlgebra {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn symdiff(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;
}

/// `B(I)` for `I = {0, …, order_size - 1}`. Operands must already share the
/// algebra's order size; callers validate that up front.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalAlgebra {
    pub order_size: usize,
}

impl BooleanAlgebra for IntervalAlgebra {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::empty(self.order_size)
    }

    fn one(&self) -> Element {
        Element::full(self.order_size)
    }

    fn meet(&self, a: &Element, b: &Element) -> Element {
        a.combine(b, BinOp::Meet)
    }

    fn join(&self, a: &Element, b: &Element) -> Element {
        a.combine(b, BinOp::Join)
    }

    fn symdiff(&self, a: &Element, b: &Element) -> Element {
        a.combine(b, BinOp::SymDiff)
    }

    fn complement(&self, a: &Element) -> Element {
        a.complement()
    }
}
