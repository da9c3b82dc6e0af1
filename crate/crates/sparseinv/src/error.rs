use thiserror::Error;

/// Errors surfaced by fallible library entry points.
///
/// Dimension preconditions that indicate a programming error (mixing
/// ambient spaces, multiplying mismatched matrices) panic instead; the
/// variants here are for conditions a caller can plausibly hit with
/// well-formed code: malformed input files, iteration caps, windows that
/// are too short.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or signal file field failed to parse as an exact rational.
    #[error("field `{field}`, entry {index}: `{token}` is not a rational (expected e.g. `-1` or `3/2`)")]
    BadRational {
        field: String,
        index: usize,
        token: String,
    },

    /// A matrix or vector had the wrong number of entries.
    #[error("field `{field}`: expected {expected} entries, found {found}")]
    BadShape {
        field: String,
        expected: usize,
        found: usize,
    },

    /// Structurally invalid document (not JSON, missing fields, ...).
    #[error("malformed document: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A fixpoint iteration hit its cap before stabilizing; no verdict is
    /// derived from a capped computation.
    #[error("fixpoint iteration exceeded cap of {cap} steps")]
    IterationCapExceeded { cap: usize },

    /// Caller-supplied data with inconsistent dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A support index is out of range for the input dimension.
    #[error("support index {index} out of range for {m} inputs")]
    SupportOutOfRange { index: usize, m: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
