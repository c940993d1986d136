use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient rings differ: {0}")]
    RingMismatch(String),
    #[error("series offsets {0} and {1} do not lie on a common half-integer grid")]
    GridMismatch(String, String),
    #[error("leading coefficient is not a unit")]
    NonUnitLeading,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("insufficient input order: need {needed} terms, got {got}")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("dimension mismatch: density has top degree {density}, numbers are for dimension {numbers}")]
    DimensionMismatch { density: u32, numbers: u32 },
    #[error("missing characteristic number for monomial `{0}`")]
    MissingNumber(String),
    #[error("invalid monomial `{0}`")]
    BadMonomial(String),
    #[error("inconsistent anomaly: component {component} has n = {found}, expected {expected}")]
    InconsistentAnomaly {
        component: usize,
        found: i64,
        expected: i64,
    },
    #[error("pole: {0}")]
    Pole(String),
    #[error("Im tau = {0} is below the admissible floor {1}")]
    TauBelowFloor(f64, f64),
    #[error("tolerance {0:e} is not reachable in double precision")]
    ToleranceUnreachable(f64),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
