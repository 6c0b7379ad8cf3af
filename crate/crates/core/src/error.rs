use thiserror::Error;

/// Errors raised by construction, validation and evaluation routines.
///
/// Validation of algebras and diagrams does not error on mathematical
/// violations; those are collected in the corresponding report types. The
/// variants here signal structural misuse (wrong dimensions, out-of-range
/// parameters) or inputs that contradict the standing assumptions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a subspace of the ambient algebra: {0}")]
    NotASubspace(String),

    #[error("algebra does not split as derived subalgebra \u{2295} center; input is not of compact type")]
    NonReductive,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("profile construction failed: {0}")]
    Profile(String),

    #[error("evaluation point {t} outside [0, {t_max}]")]
    OutOfRange { t: f64, t_max: f64 },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
