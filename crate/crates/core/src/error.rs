use alloc::string::String;

/// Errors raised by the library. Every variant is a validation failure on
/// the caller's input; no operation fails halfway through a computation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("axis {axis} out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("curve endpoints do not match for concatenation")]
    EndpointMismatch,
    #[error("curve has {found} vertices, more than the target complexity {target}")]
    ComplexityExceeded { found: usize, target: usize },
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("k = {k} exceeds the number of curves n = {n}")]
    TooManyCenters { k: usize, n: usize },
    #[error("oracle guard exceeded: {0}")]
    GuardExceeded(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
