//! Error types shared across the engine.

use thiserror::Error;

use crate::quiver::Interval;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("type A needs at least 2 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("orientation must list {} directions for A{n}, got {got}", n - 1)]
    WrongOrientationLength { n: usize, got: usize },
    #[error("orientation is not compatible with the involution at edge {edge}")]
    IncompatibleOrientation { edge: usize },
    #[error("cannot parse quiver text {text:?} (expected e.g. A4:><>)")]
    BadQuiverText { text: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("multiplicity of {interval} came out negative ({value}); hom oracle is inconsistent")]
    NegativeMultiplicity { interval: Interval, value: i64 },
    #[error("dimension vector has a negative entry")]
    NegativeDimension,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenericOpError {
    #[error("{l} admits no monomorphism into the given class")]
    NotEmbeddable { l: Interval },
    #[error("the given class admits no surjection onto {q}")]
    NoSurjection { q: Interval },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("not a degeneration: the Hom-order inequality fails")]
    NotDegeneration,
    #[error("classes are not ε-admissible or dimension vectors differ: {0}")]
    BadInput(String),
    #[error("internal contradiction with the structure theory: {0}")]
    Internal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("point decomposition is inconsistent: {0}")]
    InconsistentPoint(String),
    #[error("the given map is not an isotropic embedding")]
    NotIsotropic,
    #[error("matrix entry at vertex {vertex} row {row} col {col} has negative λ-weight")]
    NegativeWeightEntry { vertex: usize, row: usize, col: usize },
    #[error("operands live over different coefficient fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
