use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) is not present in the graph")]
    EdgeNotPresent { u: usize, v: usize },

    #[error("invalid edge ({u}, {v}) for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },

    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),

    #[error("line {line}: malformed graph6: {reason}")]
    MalformedGraph6Line { line: usize, reason: String },

    #[error("cycle length must be at least 3, got {0}")]
    InvalidLength(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graph does not have property S")]
    PropertySViolated,

    #[error("position has no moves")]
    NoMoves,

    #[error("reference data, line {line}: {reason}")]
    Reference { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}
