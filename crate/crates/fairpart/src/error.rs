use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("utilities are not binary")]
    NotBinary,

    #[error("size vector is not balanced")]
    NotBalanced,

    #[error("graph is not a forest")]
    NotForest,

    #[error("graph is not a path")]
    NotPath,

    #[error("no vertex cover of size at most {0}")]
    CoverTooLarge(usize),

    #[error("method not applicable: {0}")]
    NotApplicable(String),

    #[error("MMS shares missing from share table")]
    MissingMmsShares,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
