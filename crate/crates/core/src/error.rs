use thiserror::Error;

/// Errors raised by the library and surfaced by the command line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}x{expected} grid, found {found}")]
    Dimension { expected: usize, found: String },

    #[error("enumeration limit of {limit} diamonds exceeded")]
    EnumerationLimit { limit: usize },

    #[error("shift {shift} out of range 0..={max}")]
    ShiftOutOfRange { shift: usize, max: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// True for the resource-limit failure mode (distinct exit status in the CLI).
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::EnumerationLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
