use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} needs exhaustive enumeration over {n} nodes; limit is {limit} (raise with ROBUSTNET_MAX_EXHAUSTIVE_N)")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("operation requires an undirected graph")]
    RequiresUndirected,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("node set must be nonempty")]
    EmptySet,

    #[error("malicious set is not {f}-local at step {step}: node {node} has {count} faulty in-neighbors")]
    NotFLocal {
        f: usize,
        step: usize,
        node: usize,
        count: usize,
    },

    #[error("weight policy violated at node {node}, step {step}: {reason}")]
    WeightViolation {
        node: usize,
        step: usize,
        reason: String,
    },

    #[error("safety invariant violated at step {step}: {reason}")]
    InvariantViolation { step: usize, reason: String },

    #[error("non-finite value for node {node} at step {step}")]
    NonFinite { node: usize, step: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
