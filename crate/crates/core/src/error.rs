use thiserror::Error;

/// Errors raised while constructing or operating on transport data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("grid axis must contain at least one point")]
    EmptyAxis,
    #[error("grid axis points must be strictly increasing (index {0})")]
    AxisNotIncreasing(usize),
    #[error("grid axis point {0} lies outside [0, 1]")]
    AxisOutOfRange(String),
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: String },
    #[error("weights must sum to exactly 1, got {0}")]
    MassNotOne(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid number {0:?}")]
    InvalidNumber(String),
    #[error("ragged matrix: row {row} has {got} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("unknown builtin cost {0:?}")]
    UnknownCost(String),
    #[error("negative capacity factor at cell ({0}, {1})")]
    NegativeCapacity(usize, usize),
    #[error("plan violates constraint: {0}")]
    InvalidPlan(String),
    #[error("instance too large for exhaustive enumeration: {cells} cells (limit {limit})")]
    TooLarge { cells: usize, limit: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("step too large: {0}")]
    StepTooLarge(String),
    #[error("grid too small for a stencil of {steps} steps")]
    StencilTooLarge { steps: usize },
    #[error("axis is not uniformly spaced")]
    NonUniformAxis,
    #[error("marginals of the two plans differ")]
    MarginalMismatch,
    #[error("plan puts mass outside the admissible support at cell ({0}, {1})")]
    SupportViolation(usize, usize),
    #[error("problem is infeasible: {0}")]
    Infeasible(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
