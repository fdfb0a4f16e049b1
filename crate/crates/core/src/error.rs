use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("weight values sum to {0}, expected 0")]
    WeightSum(String),

    #[error("arrow {arrow} references vertex {vertex}, but the quiver has {vertex_count} vertices")]
    VertexOutOfRange {
        arrow: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("quiver is not connected")]
    Disconnected,

    #[error("quiver has a directed cycle")]
    Cyclic,

    #[error("capacity exceeded in {stage}: {found} > limit {limit}")]
    Capacity {
        stage: &'static str,
        limit: u128,
        found: u128,
    },

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("search exhausted: {0}")]
    NotFound(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid source spec: {0}")]
    Source(String),

    #[error("simplex exceeded the pivot cap of {0}")]
    PivotLimit(usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn capacity(stage: &'static str, limit: impl Into<u128>, found: impl Into<u128>) -> Self {
        Error::Capacity {
            stage,
            limit: limit.into(),
            found: found.into(),
        }
    }
}
