//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("bounds violation: {0}")]
    Bounds(String),

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("unknown named simplex `{0}`")]
    UnknownName(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("invalid category data: {0}")]
    InvalidCategory(String),

    #[error("missing table entry: {0}")]
    MissingEntry(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing tensor or gamma shape: {0}")]
    MissingShape(String),

    #[error("required value outside truncation: {0}")]
    Truncation(String),

    #[error("coherence failure in classifier input: {0}")]
    Coherence(String),

    #[error("no composite path found: {0}")]
    NoPath(String),

    #[error("morphism not invertible: {0}")]
    NotInvertible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
