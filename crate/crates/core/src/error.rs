use thiserror::Error;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("wrong realm: expected {expected}, found {found}")]
    WrongRealm { expected: String, found: String },
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("basis is linearly dependent (member {0} lies in the span of the earlier ones)")]
    DependentBasis(usize),
    #[error("invalid index list: {0}")]
    InvalidIndices(String),
    #[error("degree overflow: {0} exceeds 32")]
    DegreeOverflow(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("golden file {name}: {reason}")]
    Golden { name: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
