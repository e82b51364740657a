//! Error type for the command-line layer.

use thiserror::Error;

/// Everything that can go wrong between reading a spec and emitting a report.
///
/// All variants map to process exit code 1; usage errors (unknown commands or
/// flags) never reach this type because the argument parser rejects them with
/// exit code 64 first.
#[derive(Debug, Error)]
pub enum CliError {
    /// The spec file could not be read or the output file could not be
    /// written.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// The spec document is not valid JSON; the message carries the line and
    /// column of the offending token.
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    /// The document parsed but its contents are inconsistent (mismatched
    /// dimensions, unknown gallery name, nonpositive tolerance, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// The underlying computation rejected the input or detected an internal
    /// inconsistency.
    #[error("computation error: {0}")]
    Lib(#[from] monorel::Error),
}

/// Convenience alias used throughout the command-line layer.
pub type Result<T> = std::result::Result<T, CliError>;
