use thiserror::Error;

/// Failures surfaced by the library.
///
/// The CLI maps `Config` and `Domain` to a validation exit code and
/// `Numeric` to an invariant-failure exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An algebra name or parameter that no operation accepts.
    #[error("configuration error: {0}")]
    Config(String),
    /// A well-formed input outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Vector lengths that do not match the ambient rank.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A matrix model would exceed the desk-scale size cap.
    #[error("size cap exceeded: {what} needs {size}, cap is {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },
    /// A numerical identity failed to hold within tolerance.
    #[error("numeric invariant failed: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
