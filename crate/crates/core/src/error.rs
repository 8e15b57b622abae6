use thiserror::Error;

/// Errors surfaced by construction and evaluation routines.
///
/// Verification failures are never reported through this type; they end up as
/// witnesses inside a [`Certificate`](crate::certificate::Certificate).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("resource limit: {what} requires {required}, limit is {limit}")]
    Resource {
        what: String,
        required: String,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("removable singularity: {0}")]
    Singular(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
