use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CbpError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("vertex {0} is not a cut vertex")]
    NotCutVertex(usize),

    #[error("block index {index} out of range for {blocks} blocks")]
    BlockOutOfRange { index: usize, blocks: usize },

    #[error("block subset {0:?} does not induce a connected subgraph")]
    NotConnectedSubset(Vec<usize>),

    #[error("enumeration would exceed the cap of {cap} items")]
    CountOverflow { cap: usize },

    #[error("computation budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point set is not full-dimensional (affine rank {rank}, ambient {ambient})")]
    NotFullDimensional { rank: usize, ambient: usize },

    #[error("ambient dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("inequality is violated by vertex {vertex}")]
    RowInvalid { vertex: usize },

    #[error("point is not a vertex of the polytope")]
    NotAVertex,

    #[error("h*-vector has a non-integer entry at index {0}")]
    NonIntegerHStar(usize),

    #[error("leading term of binomial for {0} does not match the expected term")]
    LeadingTermMismatch(String),

    #[error("reduction did not terminate within {0} steps")]
    ReductionDiverges(usize),

    #[error("maximal simplex {0:?} is not unimodular")]
    NonUnimodularSimplex(Vec<usize>),

    #[error("graph is not a tree")]
    NotTree,

    #[error("graph is not an Eulerian cactus")]
    NotEulerianCactus,

    #[error("assertion failed: {0}")]
    AssertionFailure(String),
}

pub type Result<T, E = CbpError> = std::result::Result<T, E>;
