use thiserror::Error;

/// Errors raised by the capacity, translation, bound and oracle routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The parameter sits at a point where no single level scheme exists
    /// (for example alpha = 1, which needs time sharing).
    #[error("degenerate parameter: {0}")]
    Degenerate(String),

    /// A level scheme violates its own invariants.
    #[error("invalid level scheme: {0}")]
    InvalidLevelScheme(String),

    /// A successive-decoding scheme is malformed (missing own message,
    /// duplicated message, budget overrun, ...).
    #[error("invalid decoding scheme: {0}")]
    InvalidScheme(String),

    /// The operation is defined only for a narrower class of channels.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// An enumeration would exceed the configured evaluation budget.
    #[error("budget exceeded: {needed} evaluations requested, limit {limit}")]
    BudgetExceeded { needed: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
