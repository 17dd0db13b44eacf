use thiserror::Error;

/// Everything that can go wrong inside the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid n-order: {0}")]
    InvalidOrder(String),
    #[error("not an ordered map: {0}")]
    InvalidMap(String),
    #[error("not a total n-order")]
    NotTotal,
    #[error("morphism is not a surjection")]
    NotSurjection,
    #[error("decorated tree is not dominated by {0}")]
    NotDominated(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: String, found: String },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("label {label} out of range 1..={size}")]
    LabelOutOfRange { label: usize, size: usize },
    #[error("resource limit exceeded: {what} needs {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("cycle detected among generating arrows at {0}")]
    CycleDetected(String),
    #[error("composition table: {0}")]
    Table(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
