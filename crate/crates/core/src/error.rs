use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("point ({x}, {y}) is not on the curve (F = {value})")]
    NotOnCurve { x: String, y: String, value: String },
    #[error("point ({x}, {y}) is a singular point of the curve")]
    SingularPoint { x: String, y: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: {0}")]
    Pole(String),
    #[error("the zero ideal is not allowed")]
    ZeroIdeal,
    #[error("ideal is not invertible: {0}")]
    NonInvertible(String),
    #[error("operation requires a tier B curve (monic in y and irreducible over Q(x))")]
    TierRequired,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("relation check failed: {0}")]
    RelationFailure(String),
    #[error("{0} is not a unit of the coordinate ring")]
    NotAUnit(String),
    #[error("not primary decomposable: codim {codim} != sum of local codimensions {local_sum}")]
    NotPrimaryDecomposable { codim: usize, local_sum: usize },
    #[error("point data corrupted: {0}")]
    PointCorruption(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
