use thiserror::Error;

/// Errors raised by the tribokit library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid index range: lo ({lo}) > hi ({hi})")]
    InvalidRange { lo: i64, hi: i64 },

    #[error("{op} requires a non-negative index, got {index}")]
    NegativeIndex { op: &'static str, index: i64 },

    #[error("precision must be at least {min} decimal digits, got {got}")]
    PrecisionTooLow { min: u32, got: u32 },

    #[error("root iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("index {index} exceeds the Binet cap {cap} for this precision")]
    IndexBeyondCap { index: i64, cap: i64 },

    #[error("imaginary residual {residual:e} too large at index {index} (precision exhausted)")]
    ImaginaryResidual { index: i64, residual: f64 },

    #[error("Binet error bound {bound:e} at index {index} is not below 0.5; refusing to round")]
    BoundExceeded { index: i64, bound: f64 },

    #[error("Binet evaluation is not available for {0}")]
    BinetUnsupported(&'static str),

    #[error("denominator constant term must be 1, got {0}")]
    DenominatorConstant(String),

    #[error("denominator must have degree at least 1")]
    DenominatorDegree,

    #[error("coefficient count must be at least 1")]
    ZeroCount,

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error(transparent)]
    Oeis(#[from] crate::oeis::OeisError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
