use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bad user-supplied configuration (unknown root system label, malformed flags).
    #[error("configuration error: {0}")]
    Config(String),
    /// An operation was called outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Two independent computations disagreed where they must agree.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
