use thiserror::Error;

use crate::linalg::SubmatrixWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("field order {order} exceeds the configured cap {cap}")]
    UnsupportedSize { order: u64, cap: u64 },
    #[error("{0} is not a prime power")]
    BadOrder(u64),
    #[error("encoding {value} is not an element of a field of order {order}")]
    ElementOutOfRange { value: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("element {0} is not primitive")]
    NonPrimitiveBase(u32),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("matrix has a zero entry in its first row or column (row {row}, column {col})")]
    ZeroInFrame { row: usize, col: usize },
    #[error("{what} needs {needed}, above the cap of {cap}")]
    SizeCapExceeded { what: &'static str, needed: u128, cap: u128 },

    #[error("bad column set: {0}")]
    BadColumnSet(String),
    #[error("operation needs n = s, got s = {s}, n = {n}")]
    NotSquareTransform { s: usize, n: usize },
    #[error("bad restriction: {0}")]
    BadRestriction(String),
    #[error("array is not the representation of a bijection: {0}")]
    NotATransform(String),
    #[error("claim `{0}` has no submatrix criterion; use brute force")]
    CriterionUnavailable(String),
    #[error("cannot parse claim: {0}")]
    ClaimSyntax(String),

    #[error("evaluation points repeat (element {0})")]
    RepeatedPoint(u32),
    #[error("evaluation point is zero")]
    ZeroPoint,
    #[error("{k} columns requested, at most {max} supported")]
    TooManyColumns { k: usize, max: usize },
    #[error("zero entry at row {row}, column {col}")]
    ZeroEntry { row: usize, col: usize },
    #[error("2x2 submatrix at rows {:?}, columns {:?} is singular", .0.rows, .0.cols)]
    Not2Regular(SubmatrixWitness),
    #[error("rows {0} and {1} violate the difference property")]
    NotDifferenceMatrix(usize, usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("t = {t} out of range 1..={max}")]
    BadT { t: usize, max: usize },
    #[error("extension degree {0} too small; need n >= 2")]
    BadDegree(u32),
    #[error("columns {:?} of the parity-check matrix are linearly dependent", .0.cols)]
    DependentColumns(SubmatrixWitness),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

impl Error {
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format { line, msg: msg.into() }
    }
}
