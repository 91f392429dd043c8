use thiserror::Error;

/// Errors raised by the algebraic constructions.
///
/// Verification failures are never errors: checkers return reports.
/// Errors are reserved for malformed input and impossible requests.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not 0 or a prime below 2^31")]
    BadCharacteristic(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("order out of range: {0}")]
    OrderOutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}! is not invertible in characteristic {1}")]
    NonInvertibleFactorial(u64, u32),
    #[error("matrix has {0} columns, above the dimension guard {1}")]
    DimensionGuard(usize, usize),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent overflow at position {0}")]
    ExponentOverflow(usize),
    #[error("connection is not flat: curvature of pair ({0}, {1}) is nonzero")]
    NotFlat(usize, usize),
    #[error("malformed stratification: {0}")]
    MalformedStratification(String),
    #[error("operator has effective order {found}, at most {allowed} allowed")]
    OrderViolation { found: usize, allowed: usize },
    #[error("sections do not agree modulo the nilpotent ideal (variable {0})")]
    SectionsDisagree(usize),
    #[error("homotopy refused: {0}")]
    HomotopyRefused(String),
    #[error("transition data does not commute at level {0}")]
    NonCommuting(usize),
    #[error("degree bound exceeded: {0}")]
    DegreeBound(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}
