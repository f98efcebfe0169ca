use thiserror::Error;

/// Errors raised by the decision and witness pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that cannot describe a valid object (bad interval, unknown name, ...).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// An operation was applied outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A fiber along the requested paths is infinite; only the class-level verdict exists.
    #[error("symbolic verdict only: {0}")]
    SymbolicOnly(String),

    /// The truncated Fock basis would exceed the configured budget.
    #[error("basis budget exceeded: {needed} vectors required, budget is {budget}")]
    Budget { needed: usize, budget: usize },

    /// The operation refuses because the instance admits no counterexample.
    #[error("refused: {0}")]
    Refused(String),

    /// Two independent computations disagreed. Never a user-facing outcome on valid input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Malformed(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
