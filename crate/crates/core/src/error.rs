use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("oracle unsound: {0}")]
    OracleUnsound(String),
    #[error("depth exceeded: {0}")]
    DepthExceeded(String),
    #[error("construction violation: {0}")]
    ConstructionViolation(String),
    #[error("unverifiable at radius {radius}: {what}")]
    Unverifiable { radius: usize, what: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
