use thiserror::Error;

/// Crate-wide error type. Geometry routines are total on valid inputs; every
/// variant here corresponds to a violated precondition or an explicit
/// resource cap, never to a numerical failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension {0} unsupported; only 1, 2 and 3 are handled")]
    UnsupportedDimension(usize),

    #[error("zero vector has no primitive direction")]
    ZeroVector,

    #[error("vector is not primitive")]
    NotPrimitive,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("polytope is unbounded; use a truncated enumeration instead")]
    Unbounded,

    #[error("polytope is not full-dimensional: {0}")]
    NotFullDimensional(&'static str),

    #[error("desk-scale restriction: Picard rank {0} exceeds the supported maximum of 3")]
    UnsupportedRank(usize),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cell budget exceeded: {used} cells, cap {cap} (set ODA_MAX_CELLS to raise)")]
    CellBudget { used: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
