use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("queen function evaluates to 0 at row {row}")]
    ValueOutOfRange { row: usize },
    #[error("values do not form a permutation (column {column} repeated)")]
    NotAPermutation { column: usize },
    #[error("no solution exists for n = {0}")]
    NoSolutionExists(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("no criterion-satisfying permutation exists for n = {0} (gcd(n, 6) != 1)")]
    NoWitness(usize),
    #[error("n = {n} exceeds the supported limit of {max}")]
    LimitExceeded { n: usize, max: usize },
    #[error("prefix places attacking queens (row {row})")]
    AttackingPrefix { row: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
