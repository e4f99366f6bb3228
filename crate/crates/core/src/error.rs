use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("mismatched parameters: {0}")]
    Mismatch(String),

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: u64, bound: u64 },

    #[error("zero has no multiplicative inverse")]
    DivisionByZero,

    #[error("invalid radicand {radicand}: {reason}")]
    InvalidRadicand { radicand: String, reason: String },

    #[error("incoherent sequence: compatibility fails at level {level}")]
    Incoherent { level: u32 },

    #[error("not a unit: {0}")]
    NotUnit(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("degree {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("search budget of {millis} ms exhausted")]
    BudgetExhausted { millis: u64 },

    #[error("element is not in the span: {0}")]
    NotInSpan(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
