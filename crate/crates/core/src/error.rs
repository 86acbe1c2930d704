use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("graph with {n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{u}{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("matrix is not symmetric (entry ({row}, {col}) differs from its transpose)")]
    NotSymmetric { row: usize, col: usize },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix dimension {dim} exceeds the cap of {max}")]
    DimensionCap { dim: usize, max: usize },

    #[error("operation needs at least {min} vertices, graph has {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("polynomial has non-real roots: {0}")]
    ComplexRoots(String),

    #[error("unknown bound id `{0}`")]
    UnknownBound(String),

    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {reason}")]
    Io { path: String, reason: String },

    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
