use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A sample or coefficient is NaN or infinite, or a magnitude is negative.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The input is too short to carry a power-variance statistic.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A count, probability or process parameter is out of range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A signal file row could not be parsed.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
