use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("wrong number of points: {0}")]
    Arity(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("ordering violation: {0}")]
    Ordering(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("operation not defined for family {family:?}: {detail}")]
    Family { family: String, detail: String },

    #[error("origin is not interior: {0}")]
    Containment(String),

    #[error("vectors do not span the ambient space")]
    NotAFrame,

    #[error("problem size exceeds guard: {0}")]
    Size(String),

    #[error("hypothesis not satisfied: {0}")]
    Applicability(String),

    #[error("cross-check failed: {0}")]
    Consistency(String),

    #[error("sampling budget exhausted: {0}")]
    Sampling(String),

    #[error("invalid polytope data: {0}")]
    Validation(String),
}
