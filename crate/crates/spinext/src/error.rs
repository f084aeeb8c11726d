use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("zero vector not allowed")]
    ZeroVector,
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("Arf invariants differ: no witness exists")]
    ArfMismatch,
    #[error("{what} out of range: {value} (max {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("state budget exceeded (budget {0})")]
    BudgetExceeded(usize),
    #[error("search budget exhausted after {0} attempts")]
    SearchExhausted(usize),
    #[error("invalid bit string: {0}")]
    BadBitString(String),
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("not a semidirect decomposition: {0}")]
    BadDecomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
