use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps `Resource` to exit code 3 and everything else to an input
/// error, except `Internal`, which signals a bug or a numerical breakdown.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: broken invariants, mismatched lengths, bad indices.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A multiplicity outside the declared box of a cost.
    #[error("domain error: {0}")]
    Domain(String),
    /// A required axiom does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An enumeration or dimension cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
