use thiserror::Error;

/// Errors raised by the symbolic layer.
///
/// Verification outcomes (refuted, insufficient) are *not* errors; they are
/// reported as verdicts. Errors mean the input could not be processed at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("polynomials live in different variable contexts")]
    ContextMismatch,

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("step budget of {0} reductions exhausted")]
    Budget(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no point found after {0} attempts")]
    SamplingFailed(usize),

    /// A certificate file problem; `location` is `line N` for text input
    /// and a key path for JSON input.
    #[error("{location}: {msg}")]
    Located { location: String, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
