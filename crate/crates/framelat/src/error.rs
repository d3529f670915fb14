use thiserror::Error;

/// Errors shared across the lattice, condition and frame machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is rank deficient or singular")]
    RankError,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimError { expected: usize, got: usize },
    #[error("first lattice is not a sublattice of the second")]
    NotSublattice,
    #[error("generators do not span a discrete full-rank lattice")]
    NotALattice,
    #[error("operation unsupported for this input: {0}")]
    Unsupported(String),
    #[error("dilation is invalid: {0}")]
    BadDilation(String),
    #[error("index outside the dual translation lattice")]
    BadIndex,
    #[error("constellation hypothesis could not be verified within the search budget")]
    HypothesisUnverifiable,
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
