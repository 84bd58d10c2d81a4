use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} exceeds the sieve limit {limit}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("singular factor in Euler product at prime {prime}")]
    SingularPoint { prime: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge within {budget} nodes (last {last}, previous {previous})")]
    BudgetExceeded {
        budget: usize,
        last: f64,
        previous: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
