use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("relabelling is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph6: {0}")]
    Graph6(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("multiplicities sum to {sum}, expected {expected}")]
    MultiplicitySum { sum: usize, expected: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("subtraction would produce a negative coefficient")]
    NegativeCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {edges} edges, above the enumeration cap of {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("graph has {n} vertices; enumeration supports at most 64")]
    TooManyVertices { n: usize },
    #[error("orientation {bits:#b} contains a directed cycle")]
    Cyclic { bits: u64 },
    #[error("orientation bit vector has bits beyond the {edges} skeleton edges")]
    BitsOutOfRange { edges: usize },
    #[error("essential graph needs at least one member DAG")]
    NoMembers,
    #[error("member DAGs do not share one skeleton and immorality set")]
    NotOneClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    Invalid(String),
    #[error("unknown family spec {0:?}")]
    Unknown(String),
    #[error("{0}")]
    OutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("size bounds are only established for tree skeleta")]
    NotATree,
    #[error("tree sweeps support 1 <= p <= {max}, got {p}")]
    OutOfRange { p: usize, max: usize },
    #[error("invalid configuration: {0}")]
    Configuration(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{what} supports at most {max} vertices, got {n}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("vertex count must be at least 1")]
    Empty,
}
