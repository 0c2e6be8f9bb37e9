use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operator kinds differ")]
    KindMismatch,

    #[error("operator coefficient involves parameter variable #{0}; coefficients must lie in Q(t)")]
    ParameterInOperator(usize),

    #[error("zero divisor met in extension arithmetic; the modulus has factor {0}")]
    ZeroDivisor(String),

    #[error("unsupported factorization: {0}")]
    UnsupportedFactorization(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("factor list does not recombine to the denominator")]
    FactorMismatch,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
