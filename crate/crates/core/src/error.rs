use thiserror::Error;

/// Errors raised by graph construction, ordering evaluation and the search routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input violated an operation's argument contract (bad vertex id,
    /// malformed ordering, wrong graph kind, ...).
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The input lies outside the operation's domain (typically a disconnected graph).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exhaustive search was requested above its size cap.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// Rejection sampling gave up.
    #[error("sampling failed: {0}")]
    Sampling(String),
    /// Text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
