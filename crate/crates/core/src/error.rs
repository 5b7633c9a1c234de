use alloc::string::String;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("negative weight on edge {0}-{1}")]
    NegativeWeight(usize, usize),
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("{routine}: size {size} exceeds the ceiling {ceiling}")]
    CeilingExceeded {
        routine: &'static str,
        size: usize,
        ceiling: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown graph class `{0}`")]
    UnknownClass(String),
    #[error("class `{class}` has no {solver} solver")]
    MissingSolver { class: String, solver: &'static str },
    #[error("graph is not planar")]
    NotPlanar,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("internal contract breach: {0}")]
    ContractBreach(String),
    #[error("decision oracle inconsistent: {0}")]
    OracleFault(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("input fault: {0}")]
    InputFault(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
