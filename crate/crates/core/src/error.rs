use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("mixed coefficient rings: {left} and {right}")]
    MixedRings { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operation `{op}` is not supported over {ring}")]
    UnsupportedRing { op: &'static str, ring: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: u64, max: u32 },

    #[error("term {0} is not in the border of the order ideal")]
    NotInBorder(String),

    #[error("invalid order ideal: {0}")]
    InvalidOrderIdeal(String),

    #[error("invalid reduction structure: {0}")]
    InvalidStructure(String),

    #[error("reduction structure labels are not degree-increasing")]
    NotDegreeIncreasing,

    #[error("invalid prebasis: {0}")]
    InvalidPrebasis(String),

    #[error("insufficient prebasis degree: need border tails through degree {needed}, prebasis stops at {available}")]
    InsufficientDegree { needed: u32, available: u32 },

    #[error("Gotzmann scan exceeded its cap of {cap} degrees")]
    GotzmannCapExceeded { cap: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no constant pivot available in column {0}")]
    NoUnitPivot(usize),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
