use thiserror::Error;

use crate::rootsys::Family;

/// Errors raised by the engine. Every variant has a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}: expected {expected}")]
    InvalidRank {
        family: Family,
        rank: usize,
        expected: &'static str,
    },

    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Contract(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("{0}")]
    Semantic(String),

    #[error("chain space too large: {required} basis elements exceed cap {cap}")]
    SizeCap { required: usize, cap: usize },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRank { .. } => "invalid_rank",
            Error::NodeOutOfRange { .. } => "node_out_of_range",
            Error::NotARoot(_) => "not_a_root",
            Error::Unsupported(_) => "unsupported",
            Error::Contract(_) => "contract",
            Error::Parse { .. } => "parse",
            Error::Semantic(_) => "semantic",
            Error::SizeCap { .. } => "size_cap",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
