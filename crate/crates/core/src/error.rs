use thiserror::Error;

/// Errors raised by graph construction, parsing and the collection strategies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree} > 4")]
    DegreeExceeded { vertex: usize, degree: usize },
    #[error("inconsistent rotation system: {0}")]
    InconsistentRotation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("edge set is not a forest: {0}")]
    NotAForest(String),
    #[error("forests do not partition the edge set: {0}")]
    NotAPartition(String),
    #[error("graph has {edges} edges, more than 2n-2 = {limit}")]
    DensityTooHigh { edges: usize, limit: usize },
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not triconnected")]
    NotTriconnected,
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("dummy placement failed: {0}")]
    PlacementFailed(String),
    #[error("flow network is malformed: {0}")]
    MalformedNetwork(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
