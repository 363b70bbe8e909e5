use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("{0} has {1} positive roots; at most 128 are supported")]
    TooManyRoots(String, usize),
    #[error("cannot parse ideal: unrecognised token `{0}`")]
    BadIdealToken(String),
    #[error("cannot parse ideal: {0}")]
    BadIdeal(String),
    #[error("arrangement has {0} hyperplanes; at most 128 are supported")]
    TooManyHyperplanes(usize),
    #[error("normal vector {0:?} has the wrong dimension or is zero")]
    BadNormal(Vec<i64>),
    #[error("budget exhausted: {what} exceeded {limit}")]
    BudgetExhausted { what: &'static str, limit: usize },
    #[error("certificate rejected: {0}")]
    BadCertificate(String),
    #[error("reduction invariant failed: {0}")]
    Reduction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
