use thiserror::Error;

/// Failure modes shared by every computation in the crate.
///
/// Each variant carries a human-readable detail string; the variant itself is
/// what callers (and the command-line front end) dispatch on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("germ is not finite: {0}")]
    NotFinite(String),
    #[error("not singular at the origin: {0}")]
    NotSingular(String),
    #[error("elimination ideal is not principal: {0}")]
    NotPrincipal(String),
    #[error("eliminant has no distinguished factor at the origin: {0}")]
    NotDistinguishable(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("clean-fiber validation failed: {0}")]
    CleanFiberViolation(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("truncation insufficient: {0}")]
    Indeterminate(String),
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GermError>;

impl GermError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        GermError::InvalidInput(msg.into())
    }
}
