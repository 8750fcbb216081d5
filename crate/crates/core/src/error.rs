use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported pattern {pattern}: {reason}")]
    UnsupportedPattern { pattern: String, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search aborted after visiting {visited} nodes (limit {limit})")]
    ResourceLimit { visited: u64, limit: u64 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("brute-force and core counts disagree at n={n}, m={m}: {brute} vs {cores}")]
    Disagreement {
        n: usize,
        m: usize,
        brute: String,
        cores: String,
    },

    #[error("witness construction broke its invariant: {0}")]
    Witness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
