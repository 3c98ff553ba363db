use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypergraph is not a supertree")]
    NotSupertree,

    #[error("hypergraph is disconnected")]
    Disconnected,

    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("isomorphism search limited to {limit} vertices, got {n}")]
    IsomorphismLimit { n: usize, limit: usize },

    #[error("moving edges produced a multiple edge {0:?}")]
    MultipleEdge(Vec<usize>),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("power iteration did not converge after {iterations} iterations (bracket [{low}, {high}])")]
    NonConvergence {
        iterations: usize,
        low: f64,
        high: f64,
    },

    #[error("weighted incidence does not match the hypergraph: {0}")]
    IncidenceMismatch(String),

    #[error("alpha = {alpha} outside the positivity range (0, {bound})")]
    Positivity { alpha: f64, bound: f64 },

    #[error("bisection bracket failure at alpha = {alpha}: {reason}")]
    BracketFailure { alpha: f64, reason: String },

    #[error("m = {m} exceeds the enumeration limit {limit}")]
    EnumerationLimit { m: usize, limit: usize },

    #[error("counterexample found: {0}")]
    Counterexample(String),

    #[error("no radius-increasing reduction found: {0}")]
    SearchExhausted(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
