use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("type enumeration for n={n}, k={k} has {count} types, above the cap of {cap}")]
    TooManyTypes {
        n: u32,
        k: usize,
        count: u128,
        cap: u128,
    },

    #[error("P is not dominated by Q at symbol {symbol}")]
    NotDominated { symbol: usize },

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("empty prior support")]
    EmptySupport,
}

pub type Result<T> = std::result::Result<T, Error>;
