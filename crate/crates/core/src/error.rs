use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field shape: {0}")]
    InvalidShape(String),

    #[error("invalid numeral: {0}")]
    InvalidNumeral(String),

    #[error("deg_p is undefined for the zero numeral")]
    ZeroNumeral,

    #[error("numerals in base {left} and base {right} cannot be combined")]
    BaseMismatch { left: u32, right: u32 },

    #[error("value does not fit in 128 bits")]
    Overflow,

    #[error("enumeration needs {needed} candidate tuples, budget is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },

    #[error("the composition set is empty")]
    EmptySet,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible column matrix: {0}")]
    InfeasibleMatrix(String),

    #[error("invalid p-adic exponent: {0}")]
    InvalidExponent(String),

    #[error("stabilization inconclusive for m = {m}: tracked value still moving at t = {t_cap}")]
    Inconclusive { m: usize, t_cap: u64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
