use thiserror::Error;

/// Errors raised by the engine.
///
/// Verification failures (a relation that does not normalize to zero, an
/// identity with a nonzero residual) are data, not errors; they are carried
/// in the corresponding report types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtSpecialization(String),
    #[error("cannot specialize q to 0")]
    ZeroSpecialization,
    #[error("q = {0} is not admissible here (|q| must not be 0 or 1)")]
    InadmissibleSpecialization(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("no uniform q-power twist: {0}")]
    NoUniformTwist(String),
    #[error("element is not in the principal ideal: {0}")]
    NotInIdeal(String),
    #[error("scalar matrix is not rank one: {0}")]
    NotRankOne(String),
    #[error("linear spaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("syntax error at position {position}: expected {}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String> },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("manifest error: {0}")]
    Manifest(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
