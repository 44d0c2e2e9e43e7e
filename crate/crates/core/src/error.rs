use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arity {0} out of range (dense operations require 1 ..= {1})")]
    ArityOverflow(u32, u32),

    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(u32, u32),

    #[error("coordinate {0} out of range for arity {1}")]
    CoordinateOutOfRange(usize, u32),

    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("codomain violation: {0}")]
    CodomainViolation(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unknown generator or family: {0}")]
    UnknownFamily(String),

    #[error("monotone input required: {0}")]
    NotMonotone(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("theory gate violated: {0}")]
    GateViolated(String),

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
