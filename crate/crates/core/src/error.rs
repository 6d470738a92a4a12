use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `position` is the 1-based token (or character) index where parsing failed.
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("enumeration of {cardinality} elements exceeds the budget of {budget}")]
    BudgetExceeded { cardinality: u128, budget: u64 },

    #[error("{0} is not a derangement")]
    NotDerangement(String),

    #[error("invalid slot index {index}: valid slots are 0..={max}")]
    InvalidSlot { index: usize, max: usize },

    #[error("table entry g[{n}][{m}] has a negative coefficient: {poly}")]
    NegativeCoefficient { n: usize, m: usize, poly: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
