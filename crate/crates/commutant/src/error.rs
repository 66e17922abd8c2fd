use thiserror::Error;

/// Crate-wide error type.
///
/// Variants follow the failure taxonomy used throughout: structural problems
/// with table data, text parse errors (with position), operand mismatches,
/// domain violations (an argument is outside what an operation is defined
/// on), exceeded enumeration/memory budgets, and internal invariant failures
/// that indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("operand mismatch: {0}")]
    Mismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
