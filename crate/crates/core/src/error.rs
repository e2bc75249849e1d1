use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not regular at 0")]
    NotRegularAtZero,

    #[error("invalid rank n={n} for type {kind}")]
    InvalidRank { kind: String, n: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("state is not weight-homogeneous")]
    Inhomogeneous,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("tensor space has {tuples} tuples, above the cap of {cap}")]
    ResourceCap { tuples: usize, cap: usize },

    #[error("degenerate spectral point")]
    DegenerateSpectralPoint,

    #[error("lattice closure failed: {0}")]
    LatticeClosure(String),

    #[error("crystal mismatch: {0}")]
    CrystalMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
