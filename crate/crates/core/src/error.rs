use std::path::PathBuf;

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what} out of range: {msg}")]
    OutOfRange { what: &'static str, msg: String },

    #[error("{what} exceeds cap {cap} (value {value})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        value: String,
    },

    #[error("search budget of {cap} nodes exhausted; result indeterminate")]
    BudgetExhausted { cap: u64 },

    #[error("element is not contained in the parent group")]
    NotInParent,

    #[error("subgroup is not normal in the parent group")]
    NotNormal,

    #[error("invalid automorphism: {0}")]
    Automorphism(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no catalog candidate family registered for {0}")]
    UnknownCatalog(String),

    #[error("cannot read {path}: {msg}")]
    Io { path: PathBuf, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn range(what: &'static str, msg: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            msg: msg.into(),
        }
    }

    pub(crate) fn cap(what: &'static str, cap: u64, value: impl ToString) -> Self {
        Error::CapExceeded {
            what,
            cap,
            value: value.to_string(),
        }
    }

    /// True for failures that mean "could not decide within limits" rather
    /// than "the input is wrong".
    pub fn is_indeterminate(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. } | Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
