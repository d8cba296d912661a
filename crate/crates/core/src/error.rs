use thiserror::Error;

/// Errors raised by the library. Every variant is a definite failure; an
/// inconclusive search is reported through the result types, never here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coordinate dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("enumeration too large: {count} cells exceeds the cap of {cap}")]
    EnumerationTooLarge { count: String, cap: u64 },
    #[error("unsupported spectrum: {0}")]
    UnsupportedSpectrum(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("density violation: {0}")]
    Density(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("certificate failure at stage {stage}: {detail}")]
    CertificateFailure { stage: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
