use thiserror::Error;

/// Errors raised by the library. Messages are stable and matched by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible cyclotomic order: {0} vs {1}")]
    IncompatibleOrder(u32, u32),
    #[error("not a rational integer")]
    NotRationalInteger,
    #[error("not in quadratic subring")]
    NotInQuadraticSubring,
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("field too large: {0}^{1}")]
    FieldTooLarge(u64, u32),
    #[error("quadratic character requires odd characteristic")]
    OddCharacteristicRequired,
    #[error("negative length")]
    NegativeLength,
    #[error("out of range")]
    OutOfRange,
    #[error("parameter pole")]
    ParameterPole,
    #[error("inexact division")]
    InexactDivision,
    #[error("enumeration budget exceeded: {size} elements > budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("illegal label for this space: {0}")]
    IllegalLabel(String),
    #[error("no closed form")]
    NoClosedForm,
    #[error("label mismatch")]
    LabelMismatch,
    #[error("hat involution requires a real (integer-valued) canonical matrix")]
    NotReal,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
