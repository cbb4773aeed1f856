use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("2-adic valuation is undefined for zero")]
    ValuationOfZero,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,
    #[error("square root needs constant term 1, found {0}")]
    BadConstantTerm(String),
    #[error("series is not even: coefficient of x^{0} is nonzero")]
    NotEven(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("monomial {monomial} has degree {found}, expected {expected}")]
    DegreeMismatch {
        monomial: String,
        expected: u32,
        found: u32,
    },
    #[error("characteristic number for monomial {0} is missing")]
    MissingMonomial(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size budget exceeded: {0}")]
    SizeBudget(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    #[error("group of order {0} is not a 2-group")]
    NotATwoGroup(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
