use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("polynomial is not isobaric: {0}")]
    NotIsobaric(String),
    #[error("polynomial is not a modular form: {0}")]
    NotModular(String),
    #[error("order {n} exceeds the computable limit {limit}")]
    OrderOutOfRange { n: u64, limit: u64 },
    #[error("index {index} out of range (degree {degree})")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
