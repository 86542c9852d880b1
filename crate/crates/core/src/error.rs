use std::io;

use thiserror::Error;

/// Errors produced by the community detection core.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty graph: no edges remain after removing self-loops")]
    EmptyGraph,

    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("exact enumeration refused: graph has {nodes} nodes, limit is {max}")]
    OracleTooLarge { nodes: usize, max: usize },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by reading or decoding input data.
    pub fn is_input(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::EmptyGraph | Error::Io(_) | Error::Json(_) | Error::Csv(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
