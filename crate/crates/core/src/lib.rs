//! Convolution with exponentials and the Fourier family built on it.
//!
//! Every Fourier representation here is computed as the eigenfactor of a
//! convolution operator: convolve a signal with an exponential and read off the
//! scale factor. The [`harness`] module checks the resulting identities
//! numerically.

pub mod convolution;
pub mod error;
pub mod fourier;
pub mod harness;
pub mod signal;

pub use num_complex::Complex64;

pub use convolution::EigenFactor;
pub use error::{Error, Result};
pub use fourier::{BridgeReport, DftSpectrum, PeriodizedSpectrum, Residual, SeriesSpectrum, TransformSpectrum};
pub use harness::{GridParams, IdentityCheck, Report, Status, Tolerance};
pub use signal::{
    DiscreteSignal, ExpParam, Grid, PeriodicDiscreteSignal, PeriodicSampledSignal, SampledSignal,
};
