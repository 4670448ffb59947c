use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} must be positive")]
    NonPositive(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit} (raise KAX_BUDGET)")]
    Budget {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("parameter mismatch: {0}")]
    Mismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A formula or oracle invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
