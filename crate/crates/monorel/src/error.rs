use thiserror::Error;

/// Errors reported by relation and subspace operations.
///
/// Numerical *verdicts* (is this relation monotone? maximal?) are never
/// errors — they are [`crate::analysis::Certificate`] values. Errors are
/// reserved for malformed input and for internal cross-checks that disagree.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operands live in different ambient spaces, or a vector has the wrong
    /// length for the space it is used in.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Input violates a documented precondition (non-monotone matrix where a
    /// monotone one is required, empty span where a vector is needed, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two independent computations of the same quantity disagree beyond
    /// tolerance. This indicates a numerical breakdown, not a property of the
    /// input relation.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
