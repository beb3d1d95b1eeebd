use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid variable index {0}")]
    InvalidVariable(u32),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("variable x{0} has no assigned value")]
    UnassignedVariable(u32),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("polynomial is not multilinear in x1..x{0}")]
    NotMultilinear(usize),
    #[error("vector dimension {got} does not match accumulator dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown variety {0:?}")]
    UnknownVariety(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("resource limit exceeded: {what} ({value} > {limit})")]
    ResourceLimit {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
