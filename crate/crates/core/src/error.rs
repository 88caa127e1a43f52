use thiserror::Error;

/// Errors reported by signal construction, convolution and transforms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("sampling interval must be finite and > 0, got {0}")]
    InvalidStep(f64),

    #[error("period must be at least 1 sample")]
    EmptyPeriod,

    #[error("exponential base must be non-zero")]
    ZeroBase,

    #[error("expected a {expected} exponential parameter")]
    ParamKind { expected: &'static str },

    #[error("sampling interval mismatch: ts={left} vs ts={right}")]
    StepMismatch { left: f64, right: f64 },

    #[error("period mismatch: n={left} vs n={right}")]
    PeriodMismatch { left: usize, right: usize },

    #[error("harmonic window n_max={n_max} is not below half the period n={period}")]
    Aliasing { n_max: usize, period: usize },

    #[error("harmonic index {index} is not below half the period n={period}")]
    HarmonicOutOfWindow { index: i64, period: usize },

    #[error("signal support of {support} samples does not fit in a period of {period} samples")]
    SupportExceedsPeriod { support: usize, period: usize },

    #[error("shift {shift} is not an integer multiple of ts={ts}")]
    OffGrid { shift: f64, ts: f64 },

    #[error("time scale factor must be a non-zero integer")]
    ZeroScale,

    #[error("operation needs at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
