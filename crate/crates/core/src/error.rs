use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("node {node} is out of range (graph has {node_count} nodes)")]
    NodeOutOfRange { node: u64, node_count: usize },

    #[error("motif occurrence {0:?} has no endpoint inside the ball")]
    MotifOutsideBall(Vec<NodeId>),

    #[error("conductance is undefined for a cluster with zero volume")]
    UndefinedConductance,

    #[error("{kind} expansion requires nets of at most 3 pins, found a net with {pins}")]
    UnsupportedExpansion { kind: &'static str, pins: usize },

    #[error("invalid flow model input: {0}")]
    InvalidFlowModel(&'static str),

    #[error("capacity overflow while building flow network")]
    CapacityOverflow,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
