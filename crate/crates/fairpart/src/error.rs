use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by how the CLI maps them to exit codes: malformed
/// input (usage), violated preconditions and explicit refusals, and internal
/// invariant violations that indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at line {line}: node {node}")]
    SelfLoop { line: usize, node: u64 },

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} requires k = 2, got k = {k}")]
    RequiresBipartition { what: &'static str, k: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("refusing {what}: {why}")]
    Refused { what: &'static str, why: String },

    #[error("epsilon {eps} is below the feasibility floor {min_eps}")]
    EpsBelowMin { eps: f64, min_eps: f64 },

    #[error("internal invariant violation: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code class used by the CLI: 1 usage, 2 precondition/refusal,
    /// 3 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::SelfLoop { .. }
            | Error::NodeOutOfRange { .. }
            | Error::InvalidParams(_)
            | Error::Domain(_)
            | Error::Io(_) => 1,
            Error::RequiresBipartition { .. }
            | Error::Precondition(_)
            | Error::Refused { .. }
            | Error::EpsBelowMin { .. } => 2,
            Error::Internal(_) => 3,
        }
    }
}
