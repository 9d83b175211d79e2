use thiserror::Error;

/// Everything that can go wrong while building or evaluating the objects in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative exponent in {0}")]
    NegativeExponent(String),
    #[error("matrix data has {len} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkew { i: usize, j: usize },
    #[error("pfaffian needs even order, got {0}")]
    OddOrder(usize),
    #[error("matrix has more rows ({rows}) than columns ({cols})")]
    TooManyRows { rows: usize, cols: usize },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("graph has a directed cycle through {0:?}")]
    Cycle(String),
    #[error("invalid endpoints: {0}")]
    Endpoints(String),
    #[error("vertex {0:?} must be a sink")]
    NotSink(String),
    #[error("{what} exceeded the budget of {cap}")]
    Budget { what: &'static str, cap: u64 },
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid index set: {0}")]
    IndexSet(String),
    #[error("invalid region: {0}")]
    Region(String),
    #[error("region is not {0} symmetric")]
    Asymmetric(&'static str),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
