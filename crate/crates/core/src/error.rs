use thiserror::Error;

/// Every failure surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has {n} vertices; {what} is limited to {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series error: {0}")]
    Series(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
