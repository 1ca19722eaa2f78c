use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Hodge data: {0}")]
    InvalidHodge(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("tensor product is not critical")]
    NotCritical,
    #[error("unsupported rank: {0}")]
    UnsupportedRank(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("admissibility type is not degree balanced: {0}")]
    DegreeImbalance(String),
    #[error("no nonzero invariant polynomial has this admissibility type")]
    NoSuchInvariant,
    #[error("invariant space has dimension {0}, expected at most one")]
    NotUnique(usize),
    #[error("zero invariant encountered: {0}")]
    ZeroInvariant(String),
    #[error("retry cap of {0} exhausted while sampling")]
    RetryCapExhausted(usize),
    #[error("no integer exponent vector confirms exactly: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
