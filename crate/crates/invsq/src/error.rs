//! Error type shared by every numerical routine in the crate.

use thiserror::Error;

/// Failure modes of the numerical routines.
///
/// Every fallible function returns `Result<T, Error>`. The variants are
/// coarse on purpose: callers branch on the kind, the message carries the
/// specifics.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested exactly at a pole or removable singularity
    /// that the routine does not regularize.
    #[error("pole: {0}")]
    Pole(String),

    /// A root finder was given a bracket that does not contain a sign
    /// change, or the equation provably has no solution there.
    #[error("no root: {0}")]
    NoRoot(String),

    /// An iteration failed to reach its tolerance within its budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// Input is mathematically valid but outside the range where this
    /// implementation meets its accuracy contract.
    #[error("out of range: {0}")]
    OutOfRange(String),
}

impl Error {
    /// Stable machine-readable tag for serialization.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::NoRoot(_) => "no_root",
            Error::NonConvergence(_) => "non_convergence",
            Error::OutOfRange(_) => "out_of_range",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
