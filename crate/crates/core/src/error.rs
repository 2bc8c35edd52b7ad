use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {p}^{e} exceeds the 2^16 table cap")]
    OrderTooLarge { p: u32, e: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("element index {index} does not belong to a field of order {order}")]
    ForeignElement { index: u32, order: u32 },

    #[error("rank {r} out of range 1..={max}")]
    RankOutOfRange { r: u128, max: u128 },
    #[error("invalid exponent tuple: {0}")]
    InvalidTuple(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("independent routes disagree for {what}: {left} vs {right}")]
    RouteMismatch { what: String, left: String, right: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction check failed: {0}")]
    ConstructionFailed(String),

    #[error("enumeration needs {needed} visits, budget is {budget}; use randomized mode")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no coprime pair found after {0} attempts")]
    AttemptsExhausted(usize),
    #[error("no feasible subspace")]
    Infeasible,
}

pub type Result<T> = std::result::Result<T, Error>;
