use thiserror::Error;

use crate::switch_cograph::ForbiddenWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("empty induced set")]
    EmptyInducedSet,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-pair ({0}, {0}) has no color")]
    SelfPair(usize),
    #[error("color {color} out of range for {num_colors} colors")]
    ColorOutOfRange { color: usize, num_colors: usize },
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("nothing to switch: need at least 2 vertices, got {0}")]
    NothingToSwitch(usize),
    #[error("color table overflow after switching")]
    ColorOverflow,
    #[error("not a graph: expected 2 colors, got {0}")]
    NotAGraph(usize),
    #[error("not a cograph")]
    NotACograph,
    #[error("not a switch cograph: {0}")]
    NotASwitchCograph(ForbiddenWitness),
    #[error("family size cap {cap} exceeded (at least {reached} sets)")]
    CapExceeded { cap: usize, reached: usize },
    #[error("instance too large for exhaustive search: {n} vertices, cap {cap}")]
    OracleCap { n: usize, cap: usize },
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("invalid expression: {0}")]
    InvalidExpression(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
