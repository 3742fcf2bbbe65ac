use thiserror::Error;

/// Errors surfaced by the library. Guard refusals are kept distinct from
/// user errors so the CLI can map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("component on {nodes:?} is not of finite A/D/E type")]
    NotFiniteType { nodes: Vec<usize> },
    #[error("guard exceeded: {what} requires {required}, guard is {guard}")]
    GuardExceeded {
        what: String,
        required: u128,
        guard: u128,
    },
    #[error("parameter {param} at node {node} is a root of unity; not supported")]
    RootOfUnity { node: usize, param: String },
    #[error("diagram mismatch between operands")]
    DiagramMismatch,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
