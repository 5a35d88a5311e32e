//! Boolean terms: syntax, parsing, evaluation and free-algebra semantics.
//!
//! Terms are evaluated homomorphically in any [`BooleanAlgebra`]. Whether a
//! term is nontrivial (nonzero somewhere) is decided in the free algebra by
//! enumerating its truth table: a term is nontrivial exactly when it has a
//! minterm.

mod parser;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{AlgebraError, BooleanAlgebra, Element, IntervalAlgebra};

pub use parser::{ParseError, ParseErrorKind, MAX_VAR_INDEX};

/// Largest number of variables accepted by the truth-table procedures.
pub const MAX_MINTERM_VARS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("variable x{index} has no value (assignment length {provided})")]
    MissingVariable { index: usize, provided: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{n} variables exceed the truth-table capacity of {max}")]
    Capacity { n: usize, max: usize },
    #[error("term uses {needed} variables but only {n} were requested")]
    TooFewVariables { needed: usize, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Compl(Box<Term>),
    SymDiff(Box<Term>, Box<Term>),
}

/// The four three-variable terms that cover every homogeneous triple.
pub const TRIPLE_TERMS: [&str; 4] = ["x0*x1*-x2", "-x0*-x1*x2", "x1*x2", "-x1*-x2"];

/// Six-variable term that vanishes on some increasing sextuple of every large
/// enough family.
pub const SHORT_SEXTUPLE: &str = "x0*x1*-x2*-x3*x4*-x5";

/// Symmetric-difference variant of [`SHORT_SEXTUPLE`].
pub const SYMMETRIC_SEXTUPLE: &str = "(x0 ^ x1)*x2*(x3 ^ x4)*-x5";

/// `(x0 △ x1)·(x2 △ x3)`.
pub const CROSS_QUADRUPLE: &str = "(x0 ^ x1)*(x2 ^ x3)";

/// The four triple terms placed on disjoint variable blocks, in the
/// twelve-slot layout `τ1(x0,x1,x2)·τ2(x3,x4,x5)·τ3(x7,x8)·τ4(x10,x11)`.
pub const COMPOSITE_TWELVE: &str = "x0*x1*-x2*(-x3*-x4*x5)*(x7*x8)*(-x10*-x11)";

impl Term {
    pub fn parse(text: &str) -> Result<Term, ParseError> {
        parser::Parser::new(text).parse_all()
    }

    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn symdiff(a: Term, b: Term) -> Term {
        Term::SymDiff(Box::new(a), Box::new(b))
    }

    pub fn compl(a: Term) -> Term {
        Term::Compl(Box::new(a))
    }

    /// `1 + max variable index`, or 0 for a closed term.
    pub fn num_vars(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Zero | Term::One => 0,
            Term::Compl(t) => t.num_vars(),
            Term::Meet(a, b) | Term::Join(a, b) | Term::SymDiff(a, b) => a.num_vars().max(b.num_vars()),
        }
    }

    /// Top-level factors of a product, left to right.
    pub fn conjuncts(&self) -> Vec<&Term> {
        match self {
            Term::Meet(a, b) => {
                let mut out = a.conjuncts();
                out.extend(b.conjuncts());
                out
            }
            other => vec![other],
        }
    }

    pub fn eval_in<A: BooleanAlgebra>(&self, alg: &A, assignment: &[A::Elem]) -> Result<A::Elem, TermError> {
        Ok(match self {
            Term::Var(i) => assignment
                .get(*i)
                .cloned()
                .ok_or(TermError::MissingVariable { index: *i, provided: assignment.len() })?,
            Term::Zero => alg.zero(),
            Term::One => alg.one(),
            Term::Compl(t) => alg.complement(&t.eval_in(alg, assignment)?),
            Term::Meet(a, b) => alg.meet(&a.eval_in(alg, assignment)?, &b.eval_in(alg, assignment)?),
            Term::Join(a, b) => alg.join(&a.eval_in(alg, assignment)?, &b.eval_in(alg, assignment)?),
            Term::SymDiff(a, b) => alg.symdiff(&a.eval_in(alg, assignment)?, &b.eval_in(alg, assignment)?),
        })
    }

    /// Evaluates in `B(I)` for `|I| = order_size`. Every assigned element must
    /// live over that order, including unused ones.
    pub fn eval(&self, order_size: usize, assignment: &[Element]) -> Result<Element, TermError> {
        if let Some(bad) = assignment.iter().find(|a| a.order_size() != order_size) {
            return Err(AlgebraError::OrderMismatch { left: order_size, right: bad.order_size() }.into());
        }
        if self.num_vars() > assignment.len() {
            return Err(TermError::MissingVariable {
                index: self.num_vars() - 1,
                provided: assignment.len(),
            });
        }
        self.eval_in(&IntervalAlgebra { order_size }, assignment)
    }

    /// Truth table of the term over `n` variables.
    pub fn minterms(&self, n: usize) -> Result<MintermSet, TermError> {
        if n > MAX_MINTERM_VARS {
            return Err(TermError::Capacity { n, max: MAX_MINTERM_VARS });
        }
        let needed = self.num_vars();
        if needed > n {
            return Err(TermError::TooFewVariables { needed, n });
        }
        let table = TruthTable::new(n);
        let vars: Vec<Vec<u64>> = (0..n).map(|i| table.variable(i)).collect();
        let bits = self.eval_in(&table, &vars)?;
        let mut signs = BTreeSet::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                signs.insert((w * 64 + b) as u32);
                word &= word - 1;
            }
        }
        Ok(MintermSet { n, signs })
    }

    pub fn is_nontrivial(&self) -> Result<bool, TermError> {
        Ok(!self.minterms(self.num_vars())?.is_empty())
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Join(..) => 0,
            Term::SymDiff(..) => 1,
            Term::Meet(..) => 2,
            _ => 3,
        }
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Term::parse(s)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Left-associative chains: the right operand needs parentheses at equal
        // precedence, the left one only at lower precedence.
        fn side(f: &mut fmt::Formatter<'_>, t: &Term, wrap: bool) -> fmt::Result {
            if wrap {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        }
        let level = self.precedence();
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Compl(t) => {
                f.write_str("-")?;
                side(f, t, t.precedence() < 3)
            }
            Term::Meet(a, b) | Term::Join(a, b) | Term::SymDiff(a, b) => {
                let op = match self {
                    Term::Meet(..) => "*",
                    Term::Join(..) => " + ",
                    _ => " ^ ",
                };
                side(f, a, a.precedence() < level)?;
                f.write_str(op)?;
                side(f, b, b.precedence() <= level)
            }
        }
    }
}

/// The set of sign vectors on which a term is 1 in the two-element algebra.
///
/// Sign vector `ε` is stored as the integer with bit `i` equal to `ε_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MintermSet {
    pub n: usize,
    pub signs: BTreeSet<u32>,
}

impl MintermSet {
    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn contains(&self, signs: &[bool]) -> bool {
        signs.len() == self.n && self.signs.contains(&Self::encode(signs))
    }

    pub fn is_superset(&self, other: &MintermSet) -> bool {
        self.n == other.n && self.signs.is_superset(&other.signs)
    }

    /// Sign vectors in increasing order of their integer encoding.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        self.signs.iter().map(move |&m| (0..self.n).map(|i| m >> i & 1 == 1).collect())
    }

    fn encode(signs: &[bool]) -> u32 {
        signs.iter().enumerate().fold(0, |acc, (i, &s)| acc | (u32::from(s) << i))
    }
}

/// Bit-parallel truth tables: bit `m` of an element is its value under the
/// assignment `x_i ↦ bit i of m`.
struct TruthTable {
    n: usize,
    words: usize,
    last_mask: u64,
}

impl TruthTable {
    const LOW_PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];

    fn new(n: usize) -> Self {
        let rows = 1usize << n;
        let last_mask = if rows >= 64 { u64::MAX } else { (1u64 << rows) - 1 };
        TruthTable { n, words: rows.div_ceil(64), last_mask }
    }

    fn variable(&self, i: usize) -> Vec<u64> {
        debug_assert!(i < self.n);
        let mut v: Vec<u64> = (0..self.words)
            .map(|w| {
                if i < 6 {
                    Self::LOW_PATTERNS[i]
                } else if w >> (i - 6) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            })
            .collect();
        self.mask(&mut v);
        v
    }

    fn mask(&self, v: &mut [u64]) {
        if let Some(last) = v.last_mut() {
            *last &= self.last_mask;
        }
    }

    fn zip(&self, a: &[u64], b: &[u64], f: impl Fn(u64, u64) -> u64) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
    }
}

impl BooleanAlgebra for TruthTable {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![u64::MAX; self.words];
        self.mask(&mut v);
        v
    }

    fn meet(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.zip(a, b, |x, y| x & y)
    }

    fn join(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.zip(a, b, |x, y| x | y)
    }

    fn symdiff(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.zip(a, b, |x, y| x ^ y)
    }

    fn complement(&self, a: &Vec<u64>) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().map(|x| !x).collect();
        self.mask(&mut v);
        v
    }
}

/// The two-element algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct TwoElement;

impl BooleanAlgebra for TwoElement {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn meet(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn join(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }

    fn symdiff(&self, a: &bool, b: &bool) -> bool {
        a != b
    }

    fn complement(&self, a: &bool) -> bool {
        !a
    }
}
