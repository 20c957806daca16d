use thiserror::Error;

/// Errors raised by the arithmetic, polynomial, series and identity layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient index {index} out of range for series of order {order}")]
    IndexOutOfRange { index: i64, order: usize },

    #[error("enumeration of {size} subsets exceeds the cap of {cap}")]
    EnumerationCap { size: String, cap: u64 },

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
