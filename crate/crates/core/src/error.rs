use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (signature mismatch, out-of-range entry, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Text artifact could not be parsed.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// A set grew (or would grow) past the configured element cap.
    #[error("budget exceeded: {what} reached {size} elements (limit {limit})")]
    Budget {
        what: String,
        size: u128,
        limit: usize,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
