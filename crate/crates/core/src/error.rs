use thiserror::Error;

use crate::content::OpPath;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,

    /// An exact division had a remainder. Inside the inversion routines this
    /// means a content prediction was wrong or the input was corrupted.
    #[error("exact division failed{}", fmt_path(.path))]
    NotDivisible { path: Option<OpPath> },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix of odd size {0} cannot be split into quadrants")]
    OddSize(usize),

    #[error("padding target {target} is smaller than the matrix size {size}")]
    InvalidPadTarget { size: usize, target: usize },

    #[error("singular pivot block at {path}")]
    SingularPivot { path: OpPath },

    #[error("cannot take the content of a zero matrix")]
    ZeroMatrix,

    #[error("matrix of size {size} exceeds the oracle limit {limit}")]
    OracleTooLarge { size: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("malformed matrix document: {0}")]
    Json(String),
}

fn fmt_path(path: &Option<OpPath>) -> String {
    match path {
        Some(p) => format!(" at {p}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn not_divisible() -> Self {
        Error::NotDivisible { path: None }
    }

    /// Attach a recursion path to a `NotDivisible` error; other variants pass through.
    pub fn at_path(self, at: &OpPath) -> Self {
        match self {
            Error::NotDivisible { path: None } => Error::NotDivisible {
                path: Some(at.clone()),
            },
            other => other,
        }
    }
}
