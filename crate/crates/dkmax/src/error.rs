use std::fmt;

/// Error type shared by the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("cache error at line {line}: {msg}")]
    Cache { line: usize, msg: String },
    #[error("cannot order jump points: {0}")]
    TieUnresolved(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        Error::InvalidArgument(msg.to_string())
    }
    pub(crate) fn range(msg: impl fmt::Display) -> Self {
        Error::OutOfRange(msg.to_string())
    }
    pub(crate) fn resource(msg: impl fmt::Display) -> Self {
        Error::ResourceLimit(msg.to_string())
    }
    pub(crate) fn domain(msg: impl fmt::Display) -> Self {
        Error::DomainError(msg.to_string())
    }
    pub(crate) fn internal(msg: impl fmt::Display) -> Self {
        Error::Internal(msg.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
