use thiserror::Error;

/// Errors raised by domain operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertices must be pairwise distinct")]
    RepeatedVertex,

    #[error("expected a tuple of length {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("demanded sets must be pairwise disjoint")]
    OverlappingSets,

    #[error("vertex map must be injective")]
    NotInjective,

    #[error("vertex map must be a bijection between digraphs of equal size")]
    NotBijective,

    #[error("initial pairs do not form a partial isomorphism")]
    NotPartialIsomorphism,

    #[error("rotation pieces must be disjoint and cover every vertex")]
    MalformedPartition,

    #[error("vertex set contains an out-of-range or repeated vertex")]
    MalformedVertexSet,

    #[error("anchor vertex {0} has no incident edge")]
    IsolatedAnchor(usize),

    #[error("not a tournament: pair ({0}, {1}) is a non-edge")]
    NotATournament(usize, usize),

    #[error("constants must be distinct, in range, and listed in increasing order")]
    BadConstants,

    #[error("tuple length bound must be at least 2")]
    BadTupleLength,

    #[error("self-loop [{0}, {0}] is not allowed")]
    SelfLoop(usize),

    #[error("duplicate edge [{0}, {1}]")]
    DuplicateEdge(usize, usize),

    #[error("two-way pair between {0} and {1} is not allowed")]
    TwoWayPair(usize, usize),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
