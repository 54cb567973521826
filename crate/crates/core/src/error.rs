use thiserror::Error;

/// Crate-wide error type. The CLI maps the variants onto exit codes, so new
/// failure modes should pick the variant with the right operational meaning
/// rather than a new one.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed graph file or structurally invalid graph.
    #[error("parse error: {0}")]
    Parse(String),

    /// A precondition on an operation's inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Deliberate size cutoff hit (state spaces too large to enumerate).
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// Two independent routes to the same quantity disagreed.
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),

    /// Internal invariant broken; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
