use thiserror::Error;

use crate::alteration::EdgeAddition;
use crate::components::ComponentKind;
use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no nodes")]
    EmptyInput,

    #[error("network has no nodes")]
    EmptyNetwork,

    #[error("invalid edge ({src}, {dst}): {reason}")]
    InvalidEdge { src: NodeId, dst: NodeId, reason: &'static str },

    #[error("matching is not maximum: an augmenting path exists")]
    NotMaximum,

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("node {0} is not an input node of the matching")]
    NotInputNode(NodeId),

    #[error("({witness}, {node}) is not an unmatched in-edge of node {node}")]
    NotUnmatchedInEdge { witness: NodeId, node: NodeId },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("component {id} is {found}, expected {expected}")]
    WrongKind { id: usize, expected: &'static str, found: ComponentKind },

    #[error("no component with id {0}")]
    UnknownComponent(usize),

    #[error("no input node available (network is perfectly matched)")]
    NoInputNode,

    #[error("no feasible addition: every candidate edge already exists or is a self-loop")]
    NoFeasibleAddition,

    #[error("insufficient input nodes: {needed} unsaturated nodes to saturate, {available} input nodes")]
    InsufficientInputNodes {
        needed: usize,
        available: usize,
        partial: Vec<EdgeAddition>,
    },

    #[error("oracle infeasible: {0}")]
    OracleInfeasible(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("generation stalled after {attempts} attempts with {edges} of {target} edges placed")]
    GenerationStall { attempts: u64, edges: usize, target: usize },
}
