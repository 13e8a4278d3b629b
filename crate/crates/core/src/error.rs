use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: negative weight")]
    NegativeWeight { line: usize },
    #[error("line {line}: node id {id} out of range (n = {n})")]
    NodeOutOfRange { line: usize, id: usize, n: usize },
    #[error("missing 'p sp <n> <m>' header")]
    MissingHeader,
    #[error("empty graph")]
    EmptyGraph,
    #[error("node {0} unreachable; restrict the graph to its core first")]
    Unreachable(usize),
    #[error("operation requires a directed graph")]
    NotDirected,
    #[error("operation requires an undirected graph")]
    DirectedUnsupported,
    #[error("operation requires unit weights")]
    WeightedUnsupported,
    #[error("graph is not chordal")]
    NotChordal,
    #[error("ranking is not a permutation of 0..n")]
    BadRanking,
    #[error("objective is not non-decreasing: node {node} selected with loose bound but its antipode {antipode} is already in the lower certificate")]
    MonotonicityViolation { node: usize, antipode: usize },
    #[error("alpha must satisfy 0 < alpha < 1")]
    InvalidAlpha,
    #[error("iteration budget must be at least 1")]
    InvalidBudget,
    #[error("epsilon must be positive")]
    InvalidEpsilon,
    #[error("instance size {n} exceeds the exact-search guard of {cap}")]
    GuardExceeded { n: usize, cap: usize },
    #[error("tight-upper relation violates partial-order axioms ({0})")]
    PartialOrderViolation(String),
    #[error("stored eccentricity {claimed} for node {node} disagrees with its sweep ({actual})")]
    StaleEcc {
        node: usize,
        claimed: u64,
        actual: u64,
    },
    #[error("certificate fingerprint does not match the graph ({0})")]
    FingerprintMismatch(String),
    #[error("degree sequence stayed infeasible after {0} retries")]
    InfeasibleDegrees(usize),
    #[error("invalid generator parameters: {0}")]
    BadGenParams(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
