use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0} != {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured enumeration or dimension limit would be exceeded.
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("denominator {den} is divisible by the prime {prime}")]
    BadPrime { den: String, prime: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn limit(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::LimitExceeded {
            what,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }
}
