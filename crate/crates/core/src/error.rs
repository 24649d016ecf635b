use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),

    #[error("no irreducible polynomial of degree {degree} found over GF({p})")]
    NotIrreducibleFound { p: u32, degree: u32 },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    Singular,

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("pair ({0}, {1}) is not in Omega")]
    NotInOmega(String, String),

    #[error("character {0} is not supported here")]
    UnsupportedCharacter(String),

    #[error("character must be nontrivial")]
    TrivialCharacter,

    #[error("hypergeometric arity mismatch: {0} numerator and {1} denominator parameters")]
    ArityMismatch(usize, usize),

    #[error("parameter {0} does not give an integral character exponent")]
    NotIntegralParameters(String),

    #[error("functions live on different fields (q={0} vs q={1})")]
    DomainMismatch(u32, u32),

    #[error("family is not intersecting")]
    NotIntersecting,

    #[error("q = {0} is outside the range this check applies to")]
    DegenerateOrder(u32),

    #[error("two evaluation routes disagree: {0}")]
    IdentityMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
