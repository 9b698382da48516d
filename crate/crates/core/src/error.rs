use thiserror::Error;

/// Error classes surfaced by the kernel.
///
/// Every error carries enough context to be reported verbatim by the CLI.
/// `IncompleteSearch` is special: it means a randomized search ran out of
/// budget, never that a verdict is wrong.
#[derive(Debug, Clone, Error)]
pub enum KernelError {
    /// Malformed textual input (polynomial grammar, JSON problem files).
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Structurally invalid data: mixed variable sets, non-composable maps,
    /// differentials that do not square to zero, ill-formed presentations.
    #[error("structural error: {0}")]
    Structural(String),

    /// Input outside the supported fragment (characteristic 0 coefficients,
    /// inhomogeneous data, non-monomial ideals where monomial ones are
    /// required).
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// Degenerate input for an operation that requires a nonzero object.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A prime was supplied that does not belong to the spectrum under
    /// consideration.
    #[error("not in spectrum: {0}")]
    NotInSpectrum(String),

    /// A randomized search exhausted its try budget. Carries a rendering of
    /// the partial certificate found so far.
    #[error("incomplete search after {tries} tries: {msg}")]
    IncompleteSearch { tries: usize, msg: String },

    /// I/O failure while reading or writing files.
    #[error("io error: {0}")]
    Io(String),
}

impl KernelError {
    pub fn structural(msg: impl Into<String>) -> Self {
        KernelError::Structural(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        KernelError::Unsupported(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        KernelError::Degenerate(msg.into())
    }
}
