//! Exact arithmetic in interval Boolean algebras and their finite products,
//! homogeneity analysis of element families, and searches for index tuples
//! on which fixed nontrivial Boolean terms vanish, each backed by a
//! re-verifiable certificate.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gen;
pub mod homogeneity;
pub mod lemma16;
pub mod product;
pub mod search;
pub mod terms;

pub use algebra::{BinOp, BooleanAlgebra, Element, ExtPoint, IntervalAlgebra, Sigma};
pub use error::{Error, Result};
pub use product::Family;
pub use terms::Term;
