use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("integer overflow: {0}")]
    Overflow(String),

    /// A configurable resource guard (atom count, strategy count, window count) was exceeded.
    #[error("{what} exceeds cap ({actual} > {cap})")]
    Cap { what: &'static str, actual: u128, cap: u128 },

    #[error("proof line {line}: {msg}")]
    Proof { line: u64, msg: String },

    #[error("malformed game table (line {line}): {msg}")]
    Table { line: usize, msg: String },

    #[error("invalid game spec: {0}")]
    Spec(String),

    #[error("parameter mismatch: {0}")]
    Mismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown strategy label `{0}`")]
    UnknownLabel(String),

    #[error("malformed profile: {0}")]
    Profile(String),

    #[error("io error: {0}")]
    Io(String),

    /// A construction produced output that failed its own verifying predicate.
    #[error("internal construction failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }

    pub(crate) fn cap(what: &'static str, actual: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::Cap { what, actual: actual.into(), cap: cap.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
