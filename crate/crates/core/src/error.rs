use thiserror::Error;

/// Errors surfaced by every workbench operation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vector or matrix shapes do not match the operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A configured size cap (group order, rank, object count, ...) was exceeded.
    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: String, limit: u128 },

    /// Input text could not be parsed (group specs, generator files, series literals).
    #[error("parse error: {0}")]
    Parse(String),

    /// The request is outside what the implementation supports.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A structural invariant failed while building an object.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Exact integer arithmetic failed (inexact division, negative dimension).
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: impl Into<String>, limit: impl Into<u128>) -> Self {
        Error::ResourceCap {
            what: what.into(),
            limit: limit.into(),
        }
    }
}
