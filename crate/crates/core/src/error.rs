use thiserror::Error;

/// Errors shared across the toolkit.
///
/// `InternalInconsistency`, `PurityViolation` and `Mismatch` are fatal-bug
/// signals: they can only fire if one of the structural facts the library is
/// built on fails to hold on concrete data, so they should never be seen in
/// normal operation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource bound exceeded: {what} (limit {limit})")]
    ResourceBound { what: String, limit: usize },

    #[error("configuration does not satisfy the required assumption: {0}")]
    AssumptionViolation(String),

    #[error("the zero polynomial has no initial term")]
    ZeroPolynomial,

    #[error("facet set is not pure: {0}")]
    PurityViolation(String),

    #[error("verification mismatch: {0}")]
    Mismatch(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn resource(what: impl Into<String>, limit: usize) -> Self {
        Error::ResourceBound {
            what: what.into(),
            limit,
        }
    }

    /// Process exit code used by the CLI: 2 for bad input, 3 for resource
    /// bounds, 1 for anything that indicates a falsified check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::AssumptionViolation(_) | Error::ZeroPolynomial => 2,
            Error::ResourceBound { .. } => 3,
            Error::PurityViolation(_)
            | Error::Mismatch(_)
            | Error::InvariantViolation(_)
            | Error::InternalInconsistency(_) => 1,
        }
    }
}
