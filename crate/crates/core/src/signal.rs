//! Signal data model.
//!
//! Four representations cover the signal classes the library works with:
//!
//! * [`DiscreteSignal`]: a finite-support sequence over the integers. Every
//!   index outside the stored window evaluates to zero.
//! * [`PeriodicDiscreteSignal`]: one period `k = 0..N` of a period-`N` sequence.
//! * [`SampledSignal`]: finite-support samples `f(k·ts)` of an analog signal.
//! * [`PeriodicSampledSignal`]: one period `[0, N·ts)` of a sampled `T`-periodic
//!   analog signal, with `T = N·ts`.
//!
//! All values are double-precision complex numbers and must be finite. Periodic
//! evaluation wraps with a Euclidean modulo, so negative indices behave.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn ensure_finite(values: &[Complex64], context: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { context })
    }
}

pub(crate) fn ensure_step(ts: f64) -> Result<()> {
    if ts.is_finite() && ts > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidStep(ts))
    }
}

/// `e^{a·t}` for real `t`, as `exp(re a·t)·(cos(im a·t) + j·sin(im a·t))`.
#[inline]
pub(crate) fn exp_at(a: Complex64, t: f64) -> Complex64 {
    let (s, c) = (a.im * t).sin_cos();
    let m = (a.re * t).exp();
    Complex64::new(m * c, m * s)
}

/// Integer power by repeated squaring; negative exponents invert the positive power.
pub(crate) fn int_pow(a: Complex64, k: i64) -> Complex64 {
    let mut base = a;
    let mut e = k.unsigned_abs();
    let mut acc = ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        if e > 0 {
            base = base * base;
        }
    }
    if k < 0 {
        acc.inv()
    } else {
        acc
    }
}

/// `e^{j·2π·num/den}` with `num` reduced modulo `den` before the angle is formed.
///
/// The angle is folded into the first quadrant, so quarter turns are exact.
pub fn unit_root(num: i64, den: usize) -> Complex64 {
    assert!(den > 0, "unit_root needs a positive denominator");
    let den = den as i128;
    let quarters = 4 * (num as i128).rem_euclid(den);
    let (q, rem) = (quarters / den, quarters % den);
    let (s, c) = (FRAC_PI_2 * rem as f64 / den as f64).sin_cos();
    match q {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// Finite-support complex sequence `f: ℤ → ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSignal {
    start: i64,
    samples: Vec<Complex64>,
}

impl DiscreteSignal {
    /// Sample `i` holds the value at index `start + i`.
    pub fn new(start: i64, samples: Vec<Complex64>) -> Result<Self> {
        ensure_finite(&samples, "discrete signal")?;
        Ok(Self { start, samples })
    }

    pub fn from_real(start: i64, values: &[f64]) -> Result<Self> {
        Self::new(start, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn empty() -> Self {
        Self { start: 0, samples: Vec::new() }
    }

    /// The convolution identity: 1 at `k = 0`, zero elsewhere.
    pub fn delta() -> Self {
        Self { start: 0, samples: vec![ONE] }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the last stored index.
    pub fn end(&self) -> i64 {
        self.start + self.samples.len() as i64
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn value(&self, k: i64) -> Complex64 {
        if k < self.start || k >= self.end() {
            return ZERO;
        }
        self.samples[(k - self.start) as usize]
    }

    /// Iterates `(index, value)` over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + Clone + '_ {
        self.samples.iter().enumerate().map(move |(i, &v)| (self.start + i as i64, v))
    }
}

/// One period of a period-`N` complex sequence, holding `k = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicDiscreteSignal {
    samples: Vec<Complex64>,
}

impl PeriodicDiscreteSignal {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        ensure_finite(&samples, "periodic discrete signal")?;
        Ok(Self { samples })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Periodic identity of period `n`.
    pub fn delta(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPeriod);
        }
        let mut samples = vec![ZERO; n];
        samples[0] = ONE;
        Ok(Self { samples })
    }

    pub fn period(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn value(&self, k: i64) -> Complex64 {
        self.samples[k.rem_euclid(self.samples.len() as i64) as usize]
    }
}

/// Finite-support samples of an analog signal on the grid `t = k·ts`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    ts: f64,
    start: i64,
    samples: Vec<Complex64>,
}

impl SampledSignal {
    /// Sample `i` is the value at `t = (start + i)·ts`.
    pub fn new(ts: f64, start: i64, samples: Vec<Complex64>) -> Result<Self> {
        ensure_step(ts)?;
        ensure_finite(&samples, "sampled signal")?;
        Ok(Self { ts, start, samples })
    }

    pub fn empty(ts: f64) -> Result<Self> {
        Self::new(ts, 0, Vec::new())
    }

    /// Sampled narrow pulse: `1/ts` at `k = 0`, the identity of the approximated
    /// analog convolution.
    pub fn delta_tilde(ts: f64) -> Result<Self> {
        ensure_step(ts)?;
        Ok(Self { ts, start: 0, samples: vec![Complex64::new(1.0 / ts, 0.0)] })
    }

    pub fn ts(&self) -> f64 {
        self.ts
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.samples.len() as i64
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Time of grid index `k`.
    pub fn time(&self, k: i64) -> f64 {
        k as f64 * self.ts
    }

    /// Value at grid index `k`; zero off support.
    pub fn value(&self, k: i64) -> Complex64 {
        if k < self.start || k >= self.end() {
            return ZERO;
        }
        self.samples[(k - self.start) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + Clone + '_ {
        self.samples.iter().enumerate().map(move |(i, &v)| (self.start + i as i64, v))
    }

    /// The sample sequence `f*(k)` as a discrete signal.
    pub fn to_discrete(&self) -> DiscreteSignal {
        DiscreteSignal { start: self.start, samples: self.samples.clone() }
    }

    pub(crate) fn from_parts_unchecked(ts: f64, start: i64, samples: Vec<Complex64>) -> Self {
        Self { ts, start, samples }
    }
}

/// One period of a sampled `T`-periodic analog signal, `N` samples on `[0, T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSampledSignal {
    ts: f64,
    samples: Vec<Complex64>,
}

impl PeriodicSampledSignal {
    pub fn new(ts: f64, samples: Vec<Complex64>) -> Result<Self> {
        ensure_step(ts)?;
        if samples.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        ensure_finite(&samples, "periodic sampled signal")?;
        Ok(Self { ts, samples })
    }

    /// Periodic narrow pulse: `1/ts` at `k = 0` of every period.
    pub fn delta_tilde(n: usize, ts: f64) -> Result<Self> {
        ensure_step(ts)?;
        if n == 0 {
            return Err(Error::EmptyPeriod);
        }
        let mut samples = vec![ZERO; n];
        samples[0] = Complex64::new(1.0 / ts, 0.0);
        Ok(Self { ts, samples })
    }

    pub fn ts(&self) -> f64 {
        self.ts
    }

    pub fn period_samples(&self) -> usize {
        self.samples.len()
    }

    /// `T = N·ts`.
    pub fn period(&self) -> f64 {
        self.samples.len() as f64 * self.ts
    }

    /// Fundamental angular frequency `2π/T`.
    pub fn omega0(&self) -> f64 {
        TAU / self.period()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn time(&self, k: i64) -> f64 {
        k as f64 * self.ts
    }

    pub fn value(&self, k: i64) -> Complex64 {
        self.samples[k.rem_euclid(self.samples.len() as i64) as usize]
    }

    /// The sample sequence as a period-`N` discrete signal.
    pub fn to_discrete(&self) -> PeriodicDiscreteSignal {
        PeriodicDiscreteSignal { samples: self.samples.clone() }
    }

    pub(crate) fn from_parts_unchecked(ts: f64, samples: Vec<Complex64>) -> Self {
        Self { ts, samples }
    }
}

impl PeriodicDiscreteSignal {
    pub(crate) fn from_parts_unchecked(samples: Vec<Complex64>) -> Self {
        Self { samples }
    }
}

impl DiscreteSignal {
    pub(crate) fn from_parts_unchecked(start: i64, samples: Vec<Complex64>) -> Self {
        Self { start, samples }
    }
}

/// Exponent parameter of an exponential signal.
///
/// `Analog(a)` stands for `t ↦ e^{a·t}`, `Discrete(a)` for `k ↦ a^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpParam {
    Analog(Complex64),
    Discrete(Complex64),
}

impl ExpParam {
    /// Analog exponent. `a = 0` is accepted: `e^{0·t} = 1` is the zero-frequency
    /// harmonic and is needed for `C_0` and `F(0)`.
    pub fn analog(a: Complex64) -> Result<Self> {
        ensure_finite(&[a], "exponent")?;
        Ok(Self::Analog(a))
    }

    pub fn discrete(a: Complex64) -> Result<Self> {
        ensure_finite(&[a], "exponential base")?;
        if a == ZERO {
            return Err(Error::ZeroBase);
        }
        Ok(Self::Discrete(a))
    }

    /// Harmonic `e^{jω t}`.
    pub fn angular(omega: f64) -> Result<Self> {
        Self::analog(Complex64::new(0.0, omega))
    }

    pub fn a(&self) -> Complex64 {
        match *self {
            Self::Analog(a) | Self::Discrete(a) => a,
        }
    }

    pub(crate) fn analog_exponent(&self) -> Result<Complex64> {
        match *self {
            Self::Analog(a) => Ok(a),
            Self::Discrete(_) => Err(Error::ParamKind { expected: "analog" }),
        }
    }

    pub(crate) fn discrete_base(&self) -> Result<Complex64> {
        match *self {
            Self::Discrete(a) => Ok(a),
            Self::Analog(_) => Err(Error::ParamKind { expected: "discrete" }),
        }
    }
}

pub fn eval_analog_exponential(p: &ExpParam, t: f64) -> Result<Complex64> {
    let a = p.analog_exponent()?;
    if !t.is_finite() {
        return Err(Error::NonFinite { context: "time argument" });
    }
    Ok(exp_at(a, t))
}

pub fn eval_discrete_exponential(p: &ExpParam, k: i64) -> Result<Complex64> {
    let a = p.discrete_base()?;
    Ok(int_pow(a, k))
}

/// Samples `f` at `t = (start + i)·ts` for `i = 0..count`.
pub fn sample_function<F>(f: F, ts: f64, start: i64, count: usize) -> Result<SampledSignal>
where
    F: Fn(f64) -> Complex64,
{
    ensure_step(ts)?;
    let samples: Vec<Complex64> = (0..count as i64).map(|i| f((start + i) as f64 * ts)).collect();
    ensure_finite(&samples, "sampled function")?;
    Ok(SampledSignal { ts, start, samples })
}

/// Uniform grid `x_i = (start + i)·step`, `i = 0..count`.
///
/// Used for synthesis time grids and Fourier-transform frequency grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub step: f64,
    pub start: i64,
    pub count: usize,
}

impl Grid {
    pub fn new(step: f64, start: i64, count: usize) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid("step must be finite and > 0"));
        }
        Ok(Self { step, start, count })
    }

    /// `2·half + 1` points centred on zero.
    pub fn symmetric(step: f64, half: usize) -> Result<Self> {
        Self::new(step, -(half as i64), 2 * half + 1)
    }

    /// Grid points covering `[min, max]`, both snapped inward to multiples of `step`.
    pub fn covering(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || max < min {
            return Err(Error::InvalidGrid("range must be finite with min <= max"));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidGrid("step must be finite and > 0"));
        }
        let lo = (min / step - 1e-9).ceil() as i64;
        let hi = (max / step + 1e-9).floor() as i64;
        if hi < lo {
            return Err(Error::InvalidGrid("range contains no grid point"));
        }
        Self::new(step, lo, (hi - lo + 1) as usize)
    }

    pub fn point(&self, i: usize) -> f64 {
        (self.start + i as i64) as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }
}
