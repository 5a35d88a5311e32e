use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::homogeneity::Violation;
use crate::terms::{ParseError, TermError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("term syntax: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity { what: &'static str, got: usize, limit: usize },
    #[error("coordinate {coordinate} is not homogeneous: {violation}")]
    NotHomogeneous { coordinate: usize, violation: Violation },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Short machine-readable tag for error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Algebra(_) => "algebra",
            Error::Term(_) => "term",
            Error::Parse(_) => "parse",
            Error::Input(_) => "input",
            Error::Capacity { .. } => "capacity",
            Error::NotHomogeneous { .. } => "not_homogeneous",
            Error::Consistency(_) => "consistency",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
