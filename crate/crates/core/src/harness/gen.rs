//! Random test signals for the identity checks.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fourier::SeriesSpectrum;
use crate::signal::{
    sample_function, unit_root, DiscreteSignal, PeriodicDiscreteSignal, PeriodicSampledSignal, SampledSignal, ZERO,
};

pub(crate) type CheckRng = ChaCha8Rng;

/// Uniform on the closed complex unit disk.
pub(crate) fn unit_disk(rng: &mut CheckRng) -> Complex64 {
    Complex64::from_polar(rng.random::<f64>().sqrt(), rng.random_range(0.0..TAU))
}

pub(crate) fn complex_vec(rng: &mut CheckRng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| unit_disk(rng)).collect()
}

pub(crate) fn discrete(rng: &mut CheckRng, max_len: usize) -> DiscreteSignal {
    let len = rng.random_range(1..=max_len);
    let start = rng.random_range(-8..=8);
    DiscreteSignal::new(start, complex_vec(rng, len)).expect("unit-disk samples are finite")
}

pub(crate) fn sampled(rng: &mut CheckRng, ts: f64, max_len: usize) -> SampledSignal {
    let d = discrete(rng, max_len);
    SampledSignal::new(ts, d.start(), d.samples().to_vec()).expect("unit-disk samples are finite")
}

pub(crate) fn periodic_discrete(rng: &mut CheckRng, n: usize) -> PeriodicDiscreteSignal {
    PeriodicDiscreteSignal::new(complex_vec(rng, n)).expect("non-empty finite period")
}

pub(crate) fn periodic_sampled(rng: &mut CheckRng, n: usize, ts: f64) -> PeriodicSampledSignal {
    PeriodicSampledSignal::new(ts, complex_vec(rng, n)).expect("non-empty finite period")
}

/// `Σ_{|m|<=h} c_m e^{jmω₀t}` with unit-disk coefficients.
#[derive(Debug, Clone)]
pub(crate) struct TrigPoly {
    max_harmonic: usize,
    coefficients: Vec<Complex64>,
}

impl TrigPoly {
    pub(crate) fn random(rng: &mut CheckRng, max_harmonic: usize) -> Self {
        Self { max_harmonic, coefficients: complex_vec(rng, 2 * max_harmonic + 1) }
    }

    fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let h = self.max_harmonic as i64;
        self.coefficients.iter().enumerate().map(move |(i, &c)| (i as i64 - h, c))
    }

    pub(crate) fn coefficient(&self, m: i64) -> Complex64 {
        if m.unsigned_abs() > self.max_harmonic as u64 {
            ZERO
        } else {
            self.coefficients[(m + self.max_harmonic as i64) as usize]
        }
    }

    /// Sample `k` of one period of `n` samples, with exact roots of unity.
    fn at_index(&self, k: i64, n: usize) -> Complex64 {
        self.terms().map(|(m, c)| c * unit_root(m * k, n)).sum()
    }

    pub(crate) fn sampled(&self, n: usize, ts: f64) -> PeriodicSampledSignal {
        PeriodicSampledSignal::new(ts, (0..n as i64).map(|k| self.at_index(k, n)).collect()).expect("finite samples")
    }

    pub(crate) fn discrete(&self, n: usize) -> PeriodicDiscreteSignal {
        PeriodicDiscreteSignal::new((0..n as i64).map(|k| self.at_index(k, n)).collect()).expect("finite samples")
    }

    /// The analytic coefficients over `|m| <= n_max`.
    pub(crate) fn series(&self, period: f64, n_max: usize) -> SeriesSpectrum {
        let n = n_max as i64;
        SeriesSpectrum::new(period, n_max, (-n..=n).map(|m| self.coefficient(m)).collect()).expect("valid window")
    }
}

/// `amp · e^{−(t−c)²/(2σ²)} · e^{jβt}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Gaussian {
    pub amp: Complex64,
    pub center: f64,
    pub width: f64,
    pub freq: f64,
}

impl Gaussian {
    pub(crate) fn random(rng: &mut CheckRng, width: (f64, f64), center: f64, freq: f64) -> Self {
        let amp = Complex64::from_polar(rng.random_range(0.5..=1.0), rng.random_range(0.0..TAU));
        Self {
            amp,
            center: rng.random_range(-center..=center),
            width: rng.random_range(width.0..=width.1),
            freq: if freq > 0.0 { rng.random_range(-freq..=freq) } else { 0.0 },
        }
    }

    pub(crate) fn eval(&self, t: f64) -> Complex64 {
        let x = (t - self.center) / self.width;
        self.amp * (-0.5 * x * x).exp() * Complex64::from_polar(1.0, self.freq * t)
    }

    pub(crate) fn derivative(&self, t: f64) -> Complex64 {
        self.eval(t) * Complex64::new(-(t - self.center) / (self.width * self.width), self.freq)
    }

    /// `F(ω) = amp·σ√(2π)·e^{−σ²(ω−β)²/2}·e^{−j(ω−β)c}`.
    pub(crate) fn spectrum(&self, omega: f64) -> Complex64 {
        let d = omega - self.freq;
        self.amp * self.width * (2.0 * PI).sqrt() * (-0.5 * (self.width * d).powi(2)).exp()
            * Complex64::from_polar(1.0, -d * self.center)
    }

    /// `g(t/a)` for real `a ≠ 0`.
    pub(crate) fn dilate(&self, a: f64) -> Self {
        Self { amp: self.amp, center: a * self.center, width: a.abs() * self.width, freq: self.freq / a }
    }

    /// Exact `∫ f(τ)g(t−τ)dτ` for unmodulated factors.
    pub(crate) fn convolve(&self, other: &Self) -> Self {
        assert!(self.freq == 0.0 && other.freq == 0.0, "closed form needs unmodulated factors");
        let width = self.width.hypot(other.width);
        Self {
            amp: self.amp * other.amp * (2.0 * PI).sqrt() * self.width * other.width / width,
            center: self.center + other.center,
            width,
            freq: 0.0,
        }
    }

    /// Samples covering `c ± reach·σ`.
    pub(crate) fn sample(&self, ts: f64, reach: f64) -> SampledSignal {
        let lo = ((self.center - reach * self.width) / ts).floor() as i64;
        let hi = ((self.center + reach * self.width) / ts).ceil() as i64;
        sample_function(|t| self.eval(t), ts, lo, (hi - lo + 1) as usize).expect("finite Gaussian samples")
    }
}
