use thiserror::Error;

/// Errors raised by the engine.
///
/// The variants line up with the exit codes of the command-line driver:
/// parse problems, violated preconditions, and internal invariant failures
/// are kept apart so callers can tell user error from engine bugs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Objects from different rings or of incompatible shape were combined.
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A generator is not homogeneous; `term` quotes the offending term.
    #[error("inhomogeneous generator `{generator}`: term `{term}` has degree {found}, expected {expected}")]
    Inhomogeneous {
        generator: String,
        term: String,
        expected: u32,
        found: u32,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A computed object violated an identity that must hold exactly.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A bounded computation did not reach a conclusion.
    #[error("undetermined: {0}")]
    Undetermined(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
