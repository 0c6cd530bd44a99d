use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("{value} is not invertible modulo {modulus} (gcd {gcd})")]
    NotInvertible { value: u32, modulus: u32, gcd: u32 },
    #[error("window extent {extent} too small for radius {radius} (need > {})", 2 * radius)]
    WindowTooSmall { extent: usize, radius: usize },
    #[error("evaluation needs {needed} cells, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("point outside the defined domain: {0}")]
    OutOfDomain(String),
    #[error("{alpha} does not divide the modulus {modulus}")]
    NotADivisor { alpha: u32, modulus: u32 },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("count does not fit in 64 bits")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error is the budget guard telling the caller to switch
    /// strategy (closed form) or raise the cap.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
