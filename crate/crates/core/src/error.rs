use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: wrong lengths, non-dominant weights, bad sets.
    #[error("invalid input: {0}")]
    Input(String),

    /// Parameters outside the range where an operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation that must succeed for every valid input did not.
    /// This always indicates a bug, never bad user input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
