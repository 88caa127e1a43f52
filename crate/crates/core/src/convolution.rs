//! Convolution in all its variants, and the eigenfactor of convolution with an
//! exponential.
//!
//! The approximated analog convolution is the discrete convolution of the
//! sample sequences weighted by `ts` (left-endpoint rectangles). Periodic
//! variants sum over one stored period with wrap-around indexing; the mixed
//! variants fold a finite-support signal onto the period of a periodic one.
//!
//! Every output sample is accumulated in a fixed order, so results are
//! bit-reproducible.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{
    ensure_finite, exp_at, int_pow, DiscreteSignal, ExpParam, PeriodicDiscreteSignal,
    PeriodicSampledSignal, SampledSignal, ZERO,
};

fn same_step(left: f64, right: f64) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::StepMismatch { left, right })
    }
}

fn same_period(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::PeriodMismatch { left, right })
    }
}

fn linear_sum(f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let len = f.len() + g.len() - 1;
    (0..len)
        .map(|k| {
            let lo = k.saturating_sub(g.len() - 1);
            let hi = k.min(f.len() - 1);
            (lo..=hi).fold(ZERO, |acc, i| acc + f[i] * g[k - i])
        })
        .collect()
}

fn circular_sum(f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let n = f.len();
    (0..n)
        .map(|k| (0..n).fold(ZERO, |acc, m| acc + f[m] * g[(k + n - m) % n]))
        .collect()
}

/// `(f*g)(k) = Σ_n f(n)·g(k−n)`.
///
/// The result starts at `f.start + g.start` and has `len f + len g − 1`
/// samples (none if either input is empty).
pub fn discrete_convolve(f: &DiscreteSignal, g: &DiscreteSignal) -> DiscreteSignal {
    DiscreteSignal::from_parts_unchecked(f.start() + g.start(), linear_sum(f.samples(), g.samples()))
}

/// `ts·(f* * g*)(k)`: the approximated analog convolution on the shared grid.
pub fn approx_analog_convolve(f: &SampledSignal, g: &SampledSignal) -> Result<SampledSignal> {
    same_step(f.ts(), g.ts())?;
    let ts = f.ts();
    let samples = linear_sum(f.samples(), g.samples()).into_iter().map(|z| z * ts).collect();
    Ok(SampledSignal::from_parts_unchecked(ts, f.start() + g.start(), samples))
}

/// `(f⊛g)(k) = Σ_{n=0}^{N−1} f(n)·g(k−n)`.
pub fn periodic_convolve_discrete(
    f: &PeriodicDiscreteSignal,
    g: &PeriodicDiscreteSignal,
) -> Result<PeriodicDiscreteSignal> {
    same_period(f.period(), g.period())?;
    Ok(PeriodicDiscreteSignal::from_parts_unchecked(circular_sum(f.samples(), g.samples())))
}

/// Riemann form of `∫_T f(τ)·g(t−τ) dτ` over one period.
pub fn periodic_convolve_analog(
    f: &PeriodicSampledSignal,
    g: &PeriodicSampledSignal,
) -> Result<PeriodicSampledSignal> {
    same_step(f.ts(), g.ts())?;
    same_period(f.period_samples(), g.period_samples())?;
    let ts = f.ts();
    let samples = circular_sum(f.samples(), g.samples()).into_iter().map(|z| z * ts).collect();
    Ok(PeriodicSampledSignal::from_parts_unchecked(ts, samples))
}

fn fold_onto_period(h: impl Iterator<Item = (i64, Complex64)> + Clone, f: &[Complex64]) -> Vec<Complex64> {
    let n = f.len() as i64;
    (0..n)
        .map(|k| h.clone().fold(ZERO, |acc, (m, v)| acc + v * f[(k - m).rem_euclid(n) as usize]))
        .collect()
}

/// `(h*f)(k) = Σ_n h(n)·f(k−n)` for finite-support `h` and periodic `f`; the
/// result is periodic with the period of `f`.
pub fn mixed_convolve_discrete(h: &DiscreteSignal, f: &PeriodicDiscreteSignal) -> PeriodicDiscreteSignal {
    PeriodicDiscreteSignal::from_parts_unchecked(fold_onto_period(h.iter(), f.samples()))
}

/// Approximated analog counterpart of [`mixed_convolve_discrete`], weighted by `ts`.
pub fn mixed_convolve_analog(h: &SampledSignal, f: &PeriodicSampledSignal) -> Result<PeriodicSampledSignal> {
    same_step(h.ts(), f.ts())?;
    let ts = f.ts();
    let samples = fold_onto_period(h.iter(), f.samples()).into_iter().map(|z| z * ts).collect();
    Ok(PeriodicSampledSignal::from_parts_unchecked(ts, samples))
}

/// Direct evaluation of `(f*g)(k)` for the infinite-support exponential `g(k) = a^k`.
pub fn discrete_convolve_exponential(f: &DiscreteSignal, p: &ExpParam, k: i64) -> Result<Complex64> {
    let a = p.discrete_base()?;
    let value = f.iter().fold(ZERO, |acc, (n, v)| acc + v * int_pow(a, k - n));
    finite(value)
}

/// Direct evaluation of `(f∗̃g)(t)` for `g(t) = e^{a·t}`: `ts·Σ_n f(n·ts)·e^{a(t − n·ts)}`.
pub fn approx_analog_convolve_exponential(f: &SampledSignal, p: &ExpParam, t: f64) -> Result<Complex64> {
    let a = p.analog_exponent()?;
    if !t.is_finite() {
        return Err(Error::NonFinite { context: "time argument" });
    }
    let value = f.iter().fold(ZERO, |acc, (n, v)| acc + v * exp_at(a, t - f.time(n)));
    finite(value * f.ts())
}

fn finite(value: Complex64) -> Result<Complex64> {
    ensure_finite(&[value], "convolution with exponential")?;
    Ok(value)
}

/// Constant factor `F(a)` such that convolving `f` with an exponential returns
/// the exponential scaled by `F(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenFactor {
    pub param: ExpParam,
    pub value: Complex64,
}

impl EigenFactor {
    fn new(param: ExpParam, value: Complex64) -> Result<Self> {
        // A non-finite factor means the convolution with the exponential is not defined.
        ensure_finite(&[value], "eigenfactor")?;
        Ok(Self { param, value })
    }
}

/// `F(a) = Σ_n f(n)·a^{−n}` over the support of `f`.
pub fn exp_factor_discrete(f: &DiscreteSignal, p: &ExpParam) -> Result<EigenFactor> {
    let a = p.discrete_base()?;
    let value = f.iter().fold(ZERO, |acc, (n, v)| acc + v * int_pow(a, -n));
    EigenFactor::new(*p, value)
}

/// `F(a) = ts·Σ_k f(k·ts)·e^{−a·k·ts}`, the Riemann form of `∫ f(τ)e^{−aτ} dτ`.
pub fn exp_factor_analog(f: &SampledSignal, p: &ExpParam) -> Result<EigenFactor> {
    let a = p.analog_exponent()?;
    let value = f.iter().fold(ZERO, |acc, (k, v)| acc + v * exp_at(-a, f.time(k)));
    EigenFactor::new(*p, value * f.ts())
}

/// Periodic analog factor over the stored window `[0, T)`.
pub fn exp_factor_periodic_analog(f: &PeriodicSampledSignal, p: &ExpParam) -> Result<EigenFactor> {
    let a = p.analog_exponent()?;
    let value = f
        .samples()
        .iter()
        .enumerate()
        .fold(ZERO, |acc, (k, &v)| acc + v * exp_at(-a, f.time(k as i64)));
    EigenFactor::new(*p, value * f.ts())
}

/// `F(a) = Σ_{n=0}^{N−1} f(n)·a^{−n}`.
pub fn exp_factor_periodic_discrete(f: &PeriodicDiscreteSignal, p: &ExpParam) -> Result<EigenFactor> {
    let a = p.discrete_base()?;
    let value = f
        .samples()
        .iter()
        .enumerate()
        .fold(ZERO, |acc, (n, &v)| acc + v * int_pow(a, -(n as i64)));
    EigenFactor::new(*p, value)
}

/// Time shift `[f]_a(k) = f(k − a)` by a whole number of samples.
pub trait Shift: Sized {
    fn shift(&self, lag: i64) -> Self;
}

impl Shift for DiscreteSignal {
    fn shift(&self, lag: i64) -> Self {
        DiscreteSignal::from_parts_unchecked(self.start() + lag, self.samples().to_vec())
    }
}

impl Shift for SampledSignal {
    fn shift(&self, lag: i64) -> Self {
        SampledSignal::from_parts_unchecked(self.ts(), self.start() + lag, self.samples().to_vec())
    }
}

impl Shift for PeriodicDiscreteSignal {
    fn shift(&self, lag: i64) -> Self {
        let n = self.period() as i64;
        PeriodicDiscreteSignal::from_parts_unchecked((0..n).map(|k| self.value(k - lag)).collect())
    }
}

impl Shift for PeriodicSampledSignal {
    fn shift(&self, lag: i64) -> Self {
        let n = self.period_samples() as i64;
        PeriodicSampledSignal::from_parts_unchecked(self.ts(), (0..n).map(|k| self.value(k - lag)).collect())
    }
}

/// Converts a time shift to a whole number of samples, rejecting off-grid shifts.
pub fn grid_lag(shift: f64, ts: f64) -> Result<i64> {
    let r = shift / ts;
    let lag = r.round();
    if !r.is_finite() || (r - lag).abs() > 1e-9 * r.abs().max(1.0) {
        return Err(Error::OffGrid { shift, ts });
    }
    Ok(lag as i64)
}

/// `[f]_{t0}` for an on-grid time shift `t0`.
pub fn shift_time<S: Shift + HasStep>(f: &S, t0: f64) -> Result<S> {
    Ok(f.shift(grid_lag(t0, f.step())?))
}

/// Signals carrying a sampling interval.
pub trait HasStep {
    fn step(&self) -> f64;
}

impl HasStep for SampledSignal {
    fn step(&self) -> f64 {
        self.ts()
    }
}

impl HasStep for PeriodicSampledSignal {
    fn step(&self) -> f64 {
        self.ts()
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// `f^a(t) = f(a·t)` for a non-zero integer `a`, on the same grid.
///
/// Grid index `k` of the result holds `f*(a·k)`: `a = −1` reverses time and
/// `|a| > 1` decimates. Fractional factors would need interpolation and are
/// not accepted.
pub fn scale_time(f: &SampledSignal, a: i64) -> Result<SampledSignal> {
    if a == 0 {
        return Err(Error::ZeroScale);
    }
    if f.is_empty() {
        return Ok(SampledSignal::from_parts_unchecked(f.ts(), 0, Vec::new()));
    }
    let (lo, hi) = (f.start(), f.end() - 1);
    let (k_lo, k_hi) = if a > 0 {
        (div_ceil(lo, a), div_floor(hi, a))
    } else {
        (div_ceil(hi, a), div_floor(lo, a))
    };
    let samples = (k_lo..=k_hi).map(|k| f.value(a * k)).collect();
    Ok(SampledSignal::from_parts_unchecked(f.ts(), k_lo, samples))
}

/// Central difference `(f(t+ts) − f(t−ts))/(2ts)` on interior samples.
pub fn derivative(f: &SampledSignal) -> Result<SampledSignal> {
    if f.len() < 3 {
        return Err(Error::TooShort { needed: 3, got: f.len() });
    }
    let s = f.samples();
    let inv = 0.5 / f.ts();
    let samples = s.windows(3).map(|w| (w[2] - w[0]) * inv).collect();
    Ok(SampledSignal::from_parts_unchecked(f.ts(), f.start() + 1, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{sample_function, unit_root, ONE};
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    /// Brute-force oracle: evaluates Σ over the union of supports by index.
    fn brute_discrete(f: &DiscreteSignal, g: &DiscreteSignal, k: i64) -> Complex64 {
        (f.start()..f.end()).map(|n| f.value(n) * g.value(k - n)).sum()
    }

    #[test]
    fn discrete_examples() {
        let f = DiscreteSignal::from_real(0, &[1.0, 2.0, 3.0]).unwrap();
        let g = DiscreteSignal::from_real(0, &[1.0, 1.0]).unwrap();
        let h = discrete_convolve(&f, &g);
        assert_eq!(h.start(), 0);
        assert_eq!(h.samples(), &[c(1.0), c(3.0), c(5.0), c(3.0)]);
        for k in -2..6 {
            assert_eq!(h.value(k), brute_discrete(&f, &g, k));
        }

        let f = DiscreteSignal::from_real(0, &[1.0, -1.0]).unwrap();
        assert_eq!(discrete_convolve(&f, &g).samples(), &[c(1.0), c(0.0), c(-1.0)]);
    }

    #[test]
    fn discrete_delta_is_identity() {
        let f = DiscreteSignal::new(-3, vec![Complex64::new(0.3, -1.2), c(2.0), Complex64::new(0.0, 4.5)]).unwrap();
        assert_eq!(discrete_convolve(&f, &DiscreteSignal::delta()), f);
        assert_eq!(discrete_convolve(&DiscreteSignal::delta(), &f), f);
    }

    #[test]
    fn empty_inputs_give_empty_output() {
        let f = DiscreteSignal::from_real(2, &[1.0]).unwrap();
        assert!(discrete_convolve(&f, &DiscreteSignal::empty()).is_empty());
        let s = SampledSignal::new(0.1, 0, vec![ONE]).unwrap();
        assert!(approx_analog_convolve(&s, &SampledSignal::empty(0.1).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn analog_pulse_self_convolution_peaks_at_one() {
        let pulse = SampledSignal::new(0.25, 0, vec![ONE; 4]).unwrap();
        let tri = approx_analog_convolve(&pulse, &pulse).unwrap();
        // ts·[1,2,3,4,3,2,1]
        let expect: Vec<Complex64> = [1.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0].iter().map(|&v| c(v * 0.25)).collect();
        assert_eq!(tri.samples(), &expect[..]);
        assert_eq!(tri.value(3), ONE);
    }

    #[test]
    fn delta_tilde_is_analog_identity() {
        let ts = 0.125;
        let f = sample_function(|t| Complex64::new(t.cos(), t), ts, -5, 11).unwrap();
        let out = approx_analog_convolve(&f, &SampledSignal::delta_tilde(ts).unwrap()).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn mismatched_step_is_an_error() {
        let f = SampledSignal::new(0.1, 0, vec![ONE]).unwrap();
        let g = SampledSignal::new(0.2, 0, vec![ONE]).unwrap();
        assert_eq!(approx_analog_convolve(&f, &g), Err(Error::StepMismatch { left: 0.1, right: 0.2 }));
        let p = PeriodicSampledSignal::new(0.2, vec![ONE; 2]).unwrap();
        assert!(mixed_convolve_analog(&f, &p).is_err());
    }

    #[test]
    fn periodic_discrete_examples() {
        let f = PeriodicDiscreteSignal::from_real(&[1.0, 2.0]).unwrap();
        let g = PeriodicDiscreteSignal::from_real(&[3.0, 4.0]).unwrap();
        assert_eq!(periodic_convolve_discrete(&f, &g).unwrap().samples(), &[c(11.0), c(10.0)]);

        let d = PeriodicDiscreteSignal::delta(2).unwrap();
        assert_eq!(periodic_convolve_discrete(&f, &d).unwrap(), f);

        let three = PeriodicDiscreteSignal::delta(3).unwrap();
        assert_eq!(periodic_convolve_discrete(&f, &three), Err(Error::PeriodMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn periodic_roots_of_unity_are_orthogonal() {
        let n = 8;
        let x = |m: i64| PeriodicDiscreteSignal::new((0..n as i64).map(|k| unit_root(m * k, n)).collect()).unwrap();
        let same = periodic_convolve_discrete(&x(3), &x(3)).unwrap();
        let expect: Vec<Complex64> = x(3).samples().iter().map(|v| v * n as f64).collect();
        assert!(max_diff(same.samples(), &expect) < 1e-12);
        let cross = periodic_convolve_discrete(&x(1), &x(2)).unwrap();
        assert!(cross.samples().iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn periodic_analog_examples() {
        let ts = 0.1;
        let f = PeriodicSampledSignal::new(ts, (0..10).map(|k| Complex64::new(k as f64, 1.0)).collect()).unwrap();
        let d = PeriodicSampledSignal::delta_tilde(10, ts).unwrap();
        let out = periodic_convolve_analog(&f, &d).unwrap();
        assert!(max_diff(out.samples(), f.samples()) < 1e-14);

        let one = PeriodicSampledSignal::new(ts, vec![ONE; 10]).unwrap();
        let t = periodic_convolve_analog(&one, &one).unwrap();
        assert!(t.samples().iter().all(|v| (v - c(1.0)).norm() < 1e-14));
    }

    #[test]
    fn periodic_analog_eigenrelation_square_wave() {
        let n = 32;
        let ts = 1.0 / n as f64;
        let square = PeriodicSampledSignal::new(ts, (0..n).map(|k| c(if k < n / 2 { 1.0 } else { -1.0 })).collect()).unwrap();
        let x1 = PeriodicSampledSignal::new(ts, (0..n as i64).map(|k| unit_root(k, n)).collect()).unwrap();
        let omega0 = square.omega0();
        let factor = exp_factor_periodic_analog(&square, &ExpParam::angular(omega0).unwrap()).unwrap().value;
        let lhs = periodic_convolve_analog(&square, &x1).unwrap();
        let rhs: Vec<Complex64> = x1.samples().iter().map(|v| factor * v).collect();
        assert!(max_diff(lhs.samples(), &rhs) <= 1e-12 * factor.norm());
    }

    #[test]
    fn mixed_examples() {
        let f = PeriodicDiscreteSignal::from_real(&[1.0, 0.0]).unwrap();
        let h = DiscreteSignal::from_real(0, &[1.0, 1.0]).unwrap();
        assert_eq!(mixed_convolve_discrete(&h, &f).samples(), &[c(1.0), c(1.0)]);
        assert_eq!(mixed_convolve_discrete(&DiscreteSignal::delta(), &f), f);

        let ts = 0.5;
        let p = PeriodicSampledSignal::new(ts, vec![c(2.0), c(-1.0), c(0.5)]).unwrap();
        let out = mixed_convolve_analog(&SampledSignal::delta_tilde(ts).unwrap(), &p).unwrap();
        assert_eq!(out, p);
    }

    #[test]
    fn periodic_convolution_equals_component_convolution() {
        let f = PeriodicDiscreteSignal::from_real(&[1.0, -2.0, 0.5, 3.0]).unwrap();
        let g = PeriodicDiscreteSignal::new(vec![Complex64::new(0.0, 1.0), c(2.0), c(-1.0), Complex64::new(1.0, 1.0)]).unwrap();
        let component = DiscreteSignal::new(0, f.samples().to_vec()).unwrap();
        let lhs = periodic_convolve_discrete(&f, &g).unwrap();
        let rhs = mixed_convolve_discrete(&component, &g);
        assert!(max_diff(lhs.samples(), rhs.samples()) < 1e-14);
    }

    #[test]
    fn exp_factor_discrete_examples() {
        let two = ExpParam::discrete(c(2.0)).unwrap();
        assert_eq!(exp_factor_discrete(&DiscreteSignal::delta(), &two).unwrap().value, ONE);
        let f = DiscreteSignal::from_real(0, &[1.0, 1.0]).unwrap();
        assert_eq!(exp_factor_discrete(&f, &two).unwrap().value, c(1.5));
        let neg = ExpParam::discrete(c(-1.0)).unwrap();
        assert_eq!(exp_factor_discrete(&f, &neg).unwrap().value, c(0.0));
    }

    #[test]
    fn exp_factor_overflow_is_reported() {
        let f = DiscreteSignal::from_real(-2000, &[1.0]).unwrap();
        let big = ExpParam::discrete(c(10.0)).unwrap();
        assert!(matches!(exp_factor_discrete(&f, &big), Err(Error::NonFinite { .. })));
        let wrong = ExpParam::analog(c(1.0)).unwrap();
        assert!(matches!(exp_factor_discrete(&f, &wrong), Err(Error::ParamKind { .. })));
    }

    #[test]
    fn exp_factor_analog_examples() {
        // Unit pulse on [-1/2, 1/2): ∫ e^{-jπτ} dτ = 2 sin(π/2)/π.
        let ts = 1.0 / 1024.0;
        let pulse = sample_function(|_| ONE, ts, -512, 1024).unwrap();
        let f = exp_factor_analog(&pulse, &ExpParam::angular(PI).unwrap()).unwrap().value;
        assert!((f - c(2.0 / PI)).norm() < 2.0 * ts);

        let d = SampledSignal::delta_tilde(0.01).unwrap();
        let f = exp_factor_analog(&d, &ExpParam::analog(Complex64::new(0.3, 2.0)).unwrap()).unwrap().value;
        assert!((f - ONE).norm() < 1e-15);

        let e = SampledSignal::empty(0.1).unwrap();
        assert_eq!(exp_factor_analog(&e, &ExpParam::angular(1.0).unwrap()).unwrap().value, ZERO);
    }

    #[test]
    fn exp_factor_periodic_analog_examples() {
        let n = 16usize;
        let ts = 0.0625;
        let harmonic = |m: i64| PeriodicSampledSignal::new(ts, (0..n as i64).map(|k| unit_root(m * k, n)).collect()).unwrap();
        let t = n as f64 * ts;
        let omega0 = 2.0 * PI / t;
        let f = exp_factor_periodic_analog(&harmonic(3), &ExpParam::angular(3.0 * omega0).unwrap()).unwrap().value;
        assert!((f - c(t)).norm() < 1e-12);
        let f = exp_factor_periodic_analog(&harmonic(2), &ExpParam::angular(5.0 * omega0).unwrap()).unwrap().value;
        assert!(f.norm() < 1e-12);
        let konst = PeriodicSampledSignal::new(ts, vec![c(2.5); n]).unwrap();
        let f = exp_factor_periodic_analog(&konst, &ExpParam::angular(omega0).unwrap()).unwrap().value;
        assert!(f.norm() < 1e-12);
    }

    #[test]
    fn exp_factor_periodic_discrete_examples() {
        let d = PeriodicDiscreteSignal::delta(5).unwrap();
        let p = ExpParam::discrete(Complex64::new(0.3, 0.7)).unwrap();
        assert_eq!(exp_factor_periodic_discrete(&d, &p).unwrap().value, ONE);
        let ones = PeriodicDiscreteSignal::from_real(&[1.0; 4]).unwrap();
        let w = ExpParam::discrete(unit_root(1, 4)).unwrap();
        assert!(exp_factor_periodic_discrete(&ones, &w).unwrap().value.norm() < 1e-15);
        let one = ExpParam::discrete(ONE).unwrap();
        assert_eq!(exp_factor_periodic_discrete(&ones, &one).unwrap().value, c(4.0));
    }

    #[test]
    fn discrete_eigenrelation_by_direct_sum() {
        let f = DiscreteSignal::new(-1, vec![c(0.5), Complex64::new(-1.0, 2.0), c(3.0)]).unwrap();
        let p = ExpParam::discrete(Complex64::new(0.8, -0.9)).unwrap();
        let factor = exp_factor_discrete(&f, &p).unwrap().value;
        for k in -4..4 {
            let lhs = discrete_convolve_exponential(&f, &p, k).unwrap();
            let rhs = factor * int_pow(p.a(), k);
            assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm());
        }
    }

    #[test]
    fn shift_examples() {
        let f = PeriodicDiscreteSignal::from_real(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(f.shift(0), f);
        assert_eq!(f.shift(1).samples(), &[c(3.0), c(1.0), c(2.0)]);
        assert_eq!(f.shift(-4), f.shift(2));

        let s = SampledSignal::new(0.25, 2, vec![ONE, c(2.0)]).unwrap();
        let moved = shift_time(&s, 0.75).unwrap();
        assert_eq!((moved.start(), moved.samples()), (5, s.samples()));
        assert!(matches!(shift_time(&s, 0.3), Err(Error::OffGrid { .. })));
    }

    #[test]
    fn shift_commutes_with_convolution() {
        let f = DiscreteSignal::new(1, vec![c(1.0), Complex64::new(0.0, -2.0), c(0.5)]).unwrap();
        let g = DiscreteSignal::new(-2, vec![c(3.0), c(-1.0)]).unwrap();
        for lag in [-3, 0, 2, 7] {
            let a = discrete_convolve(&f.shift(lag), &g);
            let b = discrete_convolve(&f, &g.shift(lag));
            let c = discrete_convolve(&f, &g).shift(lag);
            assert_eq!(a, c);
            assert_eq!(b, c);
        }
    }

    #[test]
    fn scale_time_examples() {
        let f = SampledSignal::new(0.5, -1, vec![c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap();
        assert_eq!(scale_time(&f, 1).unwrap(), f);

        // indices -1..=2 map to -2..=1 after reversal
        let r = scale_time(&f, -1).unwrap();
        assert_eq!(r.start(), -2);
        assert_eq!(r.samples(), &[c(4.0), c(3.0), c(2.0), c(1.0)]);
        for k in -4..4 {
            assert_eq!(r.value(k), f.value(-k));
        }

        let d = scale_time(&f, 2).unwrap();
        for k in -3..3 {
            assert_eq!(d.value(k), f.value(2 * k));
        }
        assert_eq!(d.samples(), &[c(2.0), c(4.0)]);
        assert_eq!(d.ts(), f.ts());

        assert_eq!(scale_time(&f, 0), Err(Error::ZeroScale));
    }

    #[test]
    fn time_reversal_scaling_identity() {
        // f^{-1} * g = (f * g^{-1})^{-1}; with a = -1 the 1/|a| weight is one.
        let ts = 0.125;
        let f = sample_function(|t| Complex64::new(t, 1.0 - t * t), ts, -3, 9).unwrap();
        let g = sample_function(|t| Complex64::new((2.0 * t).sin(), 0.5), ts, 0, 6).unwrap();
        let lhs = approx_analog_convolve(&scale_time(&f, -1).unwrap(), &g).unwrap();
        let rhs = scale_time(&approx_analog_convolve(&f, &scale_time(&g, -1).unwrap()).unwrap(), -1).unwrap();
        assert_eq!(lhs.start(), rhs.start());
        assert!(max_diff(lhs.samples(), rhs.samples()) < 1e-14);
    }

    #[test]
    fn integer_scaling_identity_on_smooth_signals() {
        // f^2 * g = 1/2 (f * g^{1/2})^2, with g^{1/2}(t) = g(t/2) sampled directly.
        let ts = 1.0 / 32.0;
        let span = 12 * 32;
        let fg = |t: f64| Complex64::new((-t * t).exp(), 0.0);
        let gg = |t: f64| Complex64::new((-(t - 0.5) * (t - 0.5) * 2.0).exp(), 0.0);
        let f = sample_function(fg, ts, -span, 2 * span as usize + 1).unwrap();
        let g = sample_function(gg, ts, -span, 2 * span as usize + 1).unwrap();
        let g_half = sample_function(|t| gg(t / 2.0), ts, -2 * span, 4 * span as usize + 1).unwrap();
        let lhs = approx_analog_convolve(&scale_time(&f, 2).unwrap(), &g).unwrap();
        let inner = approx_analog_convolve(&f, &g_half).unwrap();
        let rhs = scale_time(&inner, 2).unwrap();
        for k in -64..64 {
            assert!((lhs.value(k) - rhs.value(k) * 0.5).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn derivative_examples() {
        let konst = SampledSignal::new(0.1, 0, vec![c(3.0); 5]).unwrap();
        assert!(derivative(&konst).unwrap().samples().iter().all(|v| *v == ZERO));

        let ramp = sample_function(c, 0.25, -4, 9).unwrap();
        let d = derivative(&ramp).unwrap();
        assert_eq!((d.start(), d.len()), (-3, 7));
        assert!(d.samples().iter().all(|v| (v - ONE).norm() < 1e-14));

        assert_eq!(derivative(&SampledSignal::new(0.1, 0, vec![ONE; 2]).unwrap()), Err(Error::TooShort { needed: 3, got: 2 }));
    }

    #[test]
    fn derivative_of_harmonic_is_second_order() {
        let omega = 3.0;
        let err = |ts: f64| {
            let n = (2.0 / ts) as usize;
            let f = sample_function(|t| Complex64::new(0.0, omega * t).exp(), ts, 0, n).unwrap();
            let d = derivative(&f).unwrap();
            d.iter()
                .map(|(k, v)| (v - Complex64::new(0.0, omega) * Complex64::new(0.0, omega * d.time(k)).exp()).norm())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(0.02), err(0.01));
        assert!(e1 < omega.powi(3) * 0.02f64.powi(2) / 6.0 * 1.01);
        let ratio = e1 / e2;
        assert!((3.9..4.1).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn difference_operator_transfers_through_convolution() {
        let ts = 0.05;
        // Both inputs decay to below 1e-16 at their support edges.
        let f = sample_function(|t| Complex64::new(1.0, t.sin()) * (-t * t).exp(), ts, -140, 281).unwrap();
        let g = sample_function(|t| Complex64::new((-2.0 * (t - 0.3) * (t - 0.3)).exp(), 0.0), ts, -120, 241).unwrap();
        let fg = approx_analog_convolve(&f, &g).unwrap();
        let a = approx_analog_convolve(&derivative(&f).unwrap(), &g).unwrap();
        let b = approx_analog_convolve(&f, &derivative(&g).unwrap()).unwrap();
        let d = derivative(&fg).unwrap();
        // Interior support of the differenced product is common to all three.
        for k in (d.start() + 2)..(d.end() - 2) {
            assert!((a.value(k) - d.value(k)).norm() < 1e-12);
            assert!((b.value(k) - d.value(k)).norm() < 1e-12);
        }
    }
}
