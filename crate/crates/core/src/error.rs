use thiserror::Error;

/// Hard cap for anything that enumerates vertex subsets as 64-bit masks.
pub const EXHAUSTIVE_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("graph6 short form supports at most 62 vertices, got {0}")]
    UnsupportedSize(usize),

    #[error("exhaustive solving is capped at {EXHAUSTIVE_CAP} vertices, graph has {0}")]
    SizeCap(usize),

    #[error("{0}")]
    Domain(String),

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("no witness set for edge ({0}, {1}); the graph is not minimally tough at this t")]
    WitnessNotFound(usize, usize),

    #[error("time budget exhausted")]
    Timeout,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
