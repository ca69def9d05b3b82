use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates an operation's domain (wrong schema, bad vertex, gcd != 1, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is not defined for this input family.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Matrix or block shapes do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// Malformed textual input (JSON files, rationals, descriptors).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
