use thiserror::Error;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GupError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {name} = {value}, expected {expected}")]
    IndexOutOfRange {
        name: &'static str,
        value: usize,
        expected: &'static str,
    },

    #[error("singular input: {0}")]
    Singular(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("non-finite field sample on segment {segment} at s = {s}")]
    NonFiniteSample { segment: usize, s: f64 },

    #[error("winding number is ambiguous: pre-rounding residual {residual:e}")]
    AmbiguousWinding { residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = GupError> = std::result::Result<T, E>;
