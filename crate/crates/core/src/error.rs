use std::fmt;

/// Errors raised by index construction, queries and file handling.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what} {value} out of range (valid: {lo}..={hi})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} is not reached by the search tree")]
    Unreached(usize),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("corrupt index file: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 2 for bad input or domain errors, 3 for corrupt data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Corrupt(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn range(what: &'static str, value: usize, lo: usize, hi: usize) -> Self {
        Error::OutOfRange { what, value, lo, hi }
    }

    pub(crate) fn input(msg: impl fmt::Display) -> Self {
        Error::Input(msg.to_string())
    }

    pub(crate) fn corrupt(msg: impl fmt::Display) -> Self {
        Error::Corrupt(msg.to_string())
    }
}
