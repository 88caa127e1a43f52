//! Fourier series, DFT and Fourier transform as eigenfactors of convolution
//! with exponentials.
//!
//! * Series: `F(n)` is the periodic analog eigenfactor at `a = jnω₀`, and the
//!   coefficients are `C_n = F(n)/T`.
//! * DFT: `F(n)` is the periodic discrete eigenfactor at `a = e^{jn2π/N}`.
//! * Transform: `F(ω)` is the aperiodic analog eigenfactor at `a = jω`.
//!
//! All integrals are left-endpoint Riemann sums on the sample grid. Harmonic
//! indices are restricted to `|n| < N/2`, where the root-of-unity sums are exact.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::convolution::{exp_factor_analog, exp_factor_periodic_analog, periodic_convolve_analog, periodic_convolve_discrete};
use crate::error::{Error, Result};
use crate::signal::{
    ensure_finite, ensure_step, exp_at, unit_root, ExpParam, Grid, PeriodicDiscreteSignal,
    PeriodicSampledSignal, SampledSignal, ZERO,
};

/// Max-norm residual between the two sides of an identity, with the max-norm
/// of the reference side as `scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub residual: f64,
    pub scale: f64,
}

impl Residual {
    pub fn between(lhs: &[Complex64], rhs: &[Complex64]) -> Self {
        assert_eq!(lhs.len(), rhs.len(), "residual sides differ in length");
        let residual = lhs.iter().zip(rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let scale = rhs.iter().map(|b| b.norm()).fold(0.0, f64::max);
        Self { residual, scale }
    }

    /// `residual <= tolerance·max(1, scale)`.
    pub fn within(&self, tolerance: f64) -> bool {
        self.residual <= tolerance * self.scale.max(1.0)
    }
}

fn alias_free(index: i64, period: usize) -> Result<()> {
    if 2 * index.unsigned_abs() < period as u64 {
        Ok(())
    } else {
        Err(Error::HarmonicOutOfWindow { index, period })
    }
}

fn window_alias_free(n_max: usize, period: usize) -> Result<()> {
    if 2 * n_max < period {
        Ok(())
    } else {
        Err(Error::Aliasing { n_max, period })
    }
}

/// `x_n(t) = e^{jnω₀t}` sampled on one period of `N` samples.
pub fn harmonic_sampled(n: i64, period_samples: usize, ts: f64) -> Result<PeriodicSampledSignal> {
    PeriodicSampledSignal::new(ts, (0..period_samples as i64).map(|k| unit_root(n * k, period_samples)).collect())
}

/// `x_n(k) = e^{jn(2π/N)k}`.
pub fn harmonic_discrete(n: i64, period: usize) -> Result<PeriodicDiscreteSignal> {
    PeriodicDiscreteSignal::new((0..period as i64).map(|k| unit_root(n * k, period)).collect())
}

/// Exponential Fourier series coefficients `C_n` over `|n| <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpectrum {
    period: f64,
    omega0: f64,
    n_max: usize,
    coefficients: Vec<Complex64>,
}

impl SeriesSpectrum {
    /// `coefficients[i]` is `C_{i − n_max}`.
    pub fn new(period: f64, n_max: usize, coefficients: Vec<Complex64>) -> Result<Self> {
        ensure_step(period)?;
        if coefficients.len() != 2 * n_max + 1 {
            return Err(Error::InvalidGrid("series needs 2·n_max + 1 coefficients"));
        }
        ensure_finite(&coefficients, "series coefficients")?;
        Ok(Self { period, omega0: TAU / period, n_max, coefficients })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `C_n`, zero outside the stored window.
    pub fn coefficient(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() > self.n_max as u64 {
            return ZERO;
        }
        self.coefficients[(n + self.n_max as i64) as usize]
    }

    /// `F(n) = T·C_n`.
    pub fn factor(&self, n: i64) -> Complex64 {
        self.coefficient(n) * self.period
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n_max = self.n_max as i64;
        self.coefficients.iter().enumerate().map(move |(i, &c)| (i as i64 - n_max, c))
    }
}

/// `C_n = F(n)/T`, with `F(n)` the periodic eigenfactor at `a = jnω₀`.
pub fn fourier_coefficients(f: &PeriodicSampledSignal, n_max: usize) -> Result<SeriesSpectrum> {
    window_alias_free(n_max, f.period_samples())?;
    let period = f.period();
    let omega0 = f.omega0();
    let coefficients = (-(n_max as i64)..=n_max as i64)
        .map(|n| exp_factor_periodic_analog(f, &ExpParam::angular(n as f64 * omega0)?).map(|e| e.value / period))
        .collect::<Result<Vec<_>>>()?;
    SeriesSpectrum::new(period, n_max, coefficients)
}

/// Truncated synthesis `Σ_{|n|<=n_max} C_n e^{jnω₀t}` on `grid`.
pub fn series_synthesize(s: &SeriesSpectrum, grid: &Grid) -> Result<SampledSignal> {
    let samples = grid
        .points()
        .map(|t| s.iter().fold(ZERO, |acc, (n, c)| acc + c * exp_at(Complex64::new(0.0, n as f64 * s.omega0), t)))
        .collect();
    SampledSignal::new(grid.step, grid.start, samples)
}

/// Both sides of `(f⊛x_n)(t) = F(n)x_n(t)` on the sample grid.
pub fn fs_eigencheck(f: &PeriodicSampledSignal, n: i64) -> Result<Residual> {
    let period = f.period_samples();
    alias_free(n, period)?;
    let xn = harmonic_sampled(n, period, f.ts())?;
    let lhs = periodic_convolve_analog(f, &xn)?;
    let factor = exp_factor_periodic_analog(f, &ExpParam::angular(n as f64 * f.omega0())?)?.value;
    let rhs: Vec<Complex64> = xn.samples().iter().map(|x| factor * x).collect();
    Ok(Residual::between(lhs.samples(), &rhs))
}

/// One period `F(0..N)` of a DFT; evaluation wraps modulo `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DftSpectrum {
    values: Vec<Complex64>,
}

impl DftSpectrum {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        ensure_finite(&values, "dft spectrum")?;
        Ok(Self { values })
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, n: i64) -> Complex64 {
        self.values[n.rem_euclid(self.values.len() as i64) as usize]
    }
}

/// `F(n) = Σ_{m=0}^{N−1} f(m)e^{−jm(2π/N)n}`, the plain `O(N²)` sum.
pub fn dft(f: &PeriodicDiscreteSignal) -> DftSpectrum {
    let n = f.period();
    let twiddle: Vec<Complex64> = (0..n as i64).map(|r| unit_root(-r, n)).collect();
    let values = (0..n)
        .map(|k| f.samples().iter().enumerate().fold(ZERO, |acc, (m, &v)| acc + v * twiddle[(m * k) % n]))
        .collect();
    DftSpectrum { values }
}

/// `f(k) = (1/N)·Σ_{m=0}^{N−1} F(m)e^{jm(2π/N)k}`.
pub fn idft(spectrum: &DftSpectrum) -> PeriodicDiscreteSignal {
    let n = spectrum.period();
    let twiddle: Vec<Complex64> = (0..n as i64).map(|r| unit_root(r, n)).collect();
    let scale = 1.0 / n as f64;
    let samples = (0..n)
        .map(|k| spectrum.values.iter().enumerate().fold(ZERO, |acc, (m, &v)| acc + v * twiddle[(m * k) % n]) * scale)
        .collect();
    PeriodicDiscreteSignal::new(samples).expect("idft of a finite spectrum is finite")
}

/// Both sides of `(x_m⊛x_n)(k) = Nδ(m−n)x_n(k)`.
pub fn dft_orthogonality(m: usize, n: usize, period: usize) -> Result<Residual> {
    if m >= period || n >= period {
        return Err(Error::HarmonicOutOfWindow { index: m.max(n) as i64, period });
    }
    let xm = harmonic_discrete(m as i64, period)?;
    let xn = harmonic_discrete(n as i64, period)?;
    let lhs = periodic_convolve_discrete(&xm, &xn)?;
    let weight = if m == n { period as f64 } else { 0.0 };
    let rhs: Vec<Complex64> = xn.samples().iter().map(|x| x * weight).collect();
    Ok(Residual::between(lhs.samples(), &rhs))
}

/// `F(ω)` sampled on a uniform frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSpectrum {
    grid: Grid,
    values: Vec<Complex64>,
}

impl TransformSpectrum {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.count {
            return Err(Error::InvalidGrid("spectrum length differs from grid size"));
        }
        ensure_finite(&values, "transform spectrum")?;
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn omegas(&self) -> impl Iterator<Item = f64> + '_ {
        self.grid.points()
    }

    /// Value at grid index `start + i`; zero off the grid.
    fn at_index(&self, index: i64) -> Complex64 {
        let i = index - self.grid.start;
        if i < 0 || i >= self.values.len() as i64 {
            ZERO
        } else {
            self.values[i as usize]
        }
    }
}

/// Riemann form of `F(ω) = ∫ f(τ)e^{−jωτ} dτ` at every point of `omegas`.
pub fn fourier_transform(f: &SampledSignal, omegas: &Grid) -> Result<TransformSpectrum> {
    let values = omegas
        .points()
        .map(|w| exp_factor_analog(f, &ExpParam::angular(w)?).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    TransformSpectrum::new(*omegas, values)
}

/// `f(t) = (Δω/2π)·Σ_i F(ω_i)e^{jω_i t}` on `times`.
///
/// The band and resolution are those of the spectrum's grid; nothing outside it
/// contributes.
pub fn inverse_fourier_transform(spectrum: &TransformSpectrum, times: &Grid) -> Result<SampledSignal> {
    let weight = spectrum.grid.step / TAU;
    let samples = times
        .points()
        .map(|t| {
            spectrum
                .omegas()
                .zip(&spectrum.values)
                .fold(ZERO, |acc, (w, &v)| acc + v * exp_at(Complex64::new(0.0, w), t))
                * weight
        })
        .collect();
    SampledSignal::new(times.step, times.start, samples)
}

/// Per-harmonic comparison of two routes to the same quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeReport {
    /// `(n, lhs(n), rhs(n))` for `|n| <= n_max`.
    pub rows: Vec<(i64, Complex64, Complex64)>,
    pub residual: Residual,
}

impl BridgeReport {
    fn from_rows(rows: Vec<(i64, Complex64, Complex64)>) -> Self {
        let lhs: Vec<Complex64> = rows.iter().map(|r| r.1).collect();
        let rhs: Vec<Complex64> = rows.iter().map(|r| r.2).collect();
        let residual = Residual::between(&lhs, &rhs);
        Self { rows, residual }
    }
}

fn trimmed_support(f: &SampledSignal) -> Option<(i64, i64)> {
    let first = f.iter().find(|(_, v)| *v != ZERO)?.0;
    let last = f.iter().filter(|(_, v)| *v != ZERO).last()?.0;
    Some((first, last))
}

/// Compares `F(nω₀)` of an aperiodic signal with `T·C_n` of its periodic
/// extension `f_p` of `period_samples` samples.
pub fn ft_discretize(f: &SampledSignal, period_samples: usize, n_max: usize) -> Result<BridgeReport> {
    if period_samples == 0 {
        return Err(Error::EmptyPeriod);
    }
    window_alias_free(n_max, period_samples)?;
    if let Some((first, last)) = trimmed_support(f) {
        let support = (last - first + 1) as usize;
        if support > period_samples {
            return Err(Error::SupportExceedsPeriod { support, period: period_samples });
        }
    }
    let n = period_samples as i64;
    let mut folded = vec![ZERO; period_samples];
    for (k, v) in f.iter() {
        folded[k.rem_euclid(n) as usize] += v;
    }
    let periodic = PeriodicSampledSignal::new(f.ts(), folded)?;
    let series = fourier_coefficients(&periodic, n_max)?;
    let grid = Grid::new(series.omega0(), -(n_max as i64), 2 * n_max + 1)?;
    let spectrum = fourier_transform(f, &grid)?;
    let rows = series
        .iter()
        .zip(spectrum.values())
        .map(|((k, _), &lhs)| (k, lhs, series.factor(k)))
        .collect();
    Ok(BridgeReport::from_rows(rows))
}

/// Periodized spectrum with the bound on what the dropped replicas could add.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodizedSpectrum {
    pub spectrum: TransformSpectrum,
    /// `Σ_{|r|>R} max_ω |F(ω − r·ω_s)|` over replicas that overlap the grid.
    pub tail_bound: f64,
}

/// `F*(ω) = Σ_{r=−R}^{R} F(ω − r·ω_s)` on the spectrum's own grid.
///
/// `ω_s` must be a whole number of grid steps. `F` is taken as zero off its grid.
pub fn periodize_spectrum(spectrum: &TransformSpectrum, omega_s: f64, replicas: usize) -> Result<PeriodizedSpectrum> {
    if replicas == 0 {
        return Err(Error::InvalidGrid("replica count must be at least 1"));
    }
    if !(omega_s.is_finite() && omega_s > 0.0) {
        return Err(Error::InvalidGrid("omega_s must be finite and > 0"));
    }
    let step = spectrum.grid.step;
    let shift = crate::convolution::grid_lag(omega_s, step)
        .map_err(|_| Error::InvalidGrid("omega_s must be a whole number of grid steps"))?;
    if shift == 0 {
        return Err(Error::InvalidGrid("omega_s is smaller than the grid step"));
    }
    let r_max = replicas as i64;
    let start = spectrum.grid.start;
    let count = spectrum.grid.count as i64;
    let values = (0..count)
        .map(|i| (-r_max..=r_max).fold(ZERO, |acc, r| acc + spectrum.at_index(start + i - r * shift)))
        .collect();

    // Replicas beyond |r| > R that still land on the grid.
    let reach = count / shift + 1;
    let tail_bound = (r_max + 1..=reach.max(r_max))
        .flat_map(|r| [r, -r])
        .map(|r| (0..count).map(|i| spectrum.at_index(start + i - r * shift).norm()).fold(0.0, f64::max))
        .sum();
    Ok(PeriodizedSpectrum { spectrum: TransformSpectrum::new(spectrum.grid, values)?, tail_bound })
}

/// Compares `dft(f_d)(n)` with `N·C_n` for `|n| <= n_max`.
pub fn dft_vs_series(f_d: &PeriodicDiscreteSignal, series: &SeriesSpectrum) -> Result<BridgeReport> {
    let period = f_d.period();
    window_alias_free(series.n_max(), period)?;
    let spectrum = dft(f_d);
    let rows = series
        .iter()
        .map(|(n, c)| (n, spectrum.value(n), c * period as f64))
        .collect();
    Ok(BridgeReport::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::{exp_factor_periodic_discrete, Shift};
    use crate::signal::{sample_function, ONE};
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        Residual::between(a, b).residual
    }

    fn periodic(ts: f64, n: usize, f: impl Fn(f64) -> Complex64) -> PeriodicSampledSignal {
        PeriodicSampledSignal::new(ts, (0..n).map(|k| f(k as f64 * ts)).collect()).unwrap()
    }

    /// Independent oracle: textbook DFT with the angle formed directly.
    fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len() as f64;
        (0..x.len())
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(m, v)| v * Complex64::from_polar(1.0, -TAU * (m * k) as f64 / n))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn cosine_coefficients() {
        let n = 16;
        let ts = 1.0 / n as f64;
        let f = periodic(ts, n, |t| c((TAU * t).cos()));
        let s = fourier_coefficients(&f, 7).unwrap();
        for (k, ck) in s.iter() {
            let expect = if k.abs() == 1 { 0.5 } else { 0.0 };
            assert!((ck - c(expect)).norm() < 1e-12, "C_{k} = {ck}");
        }
        assert!((s.omega0() * s.period() - TAU).abs() < 1e-12 * TAU);
    }

    #[test]
    fn constant_coefficients() {
        let f = periodic(0.1, 10, |_| Complex64::new(2.0, -1.0));
        let s = fourier_coefficients(&f, 4).unwrap();
        assert!((s.coefficient(0) - Complex64::new(2.0, -1.0)).norm() < 1e-14);
        assert!(s.iter().filter(|(k, _)| *k != 0).all(|(_, v)| v.norm() < 1e-14));
    }

    #[test]
    fn square_wave_first_coefficient() {
        let n = 256;
        let f = periodic(1.0 / n as f64, n, |t| c(if t < 0.5 { 1.0 } else { -1.0 }));
        let s = fourier_coefficients(&f, 3).unwrap();
        assert!((s.coefficient(1).norm() - 2.0 / PI).abs() < 0.01);
        // Real source: C_{-n} = conj(C_n).
        for k in 1..=3 {
            assert!((s.coefficient(-k) - s.coefficient(k).conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn aliasing_window_rejected() {
        let f = periodic(0.125, 8, |_| ONE);
        assert_eq!(fourier_coefficients(&f, 4), Err(Error::Aliasing { n_max: 4, period: 8 }));
        assert!(fourier_coefficients(&f, 3).is_ok());
        let one = periodic(1.0, 1, |_| ONE);
        assert!(fourier_coefficients(&one, 0).is_ok());
    }

    #[test]
    fn pure_harmonics_are_exact() {
        let n = 32;
        for m in -15i64..=15 {
            let f = harmonic_sampled(m, n, 0.03125).unwrap();
            let s = fourier_coefficients(&f, 15).unwrap();
            for (k, ck) in s.iter() {
                let expect = if k == m { ONE } else { ZERO };
                assert!((ck - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn series_synthesis_of_constant() {
        let s = SeriesSpectrum::new(1.0, 2, vec![ZERO, ZERO, c(3.0), ZERO, ZERO]).unwrap();
        let out = series_synthesize(&s, &Grid::new(0.1, -5, 11).unwrap()).unwrap();
        assert!(out.samples().iter().all(|v| (v - c(3.0)).norm() < 1e-15));
    }

    #[test]
    fn series_round_trip_band_limited() {
        let n = 32;
        let ts = 1.0 / 32.0;
        let coeffs = [(-3, Complex64::new(0.2, -0.1)), (-1, c(0.7)), (0, Complex64::new(0.0, 0.4)), (2, c(-0.5)), (3, Complex64::new(0.3, 0.3))];
        let f = PeriodicSampledSignal::new(
            ts,
            (0..n as i64).map(|k| coeffs.iter().map(|&(m, cm)| cm * unit_root(m * k, n)).sum()).collect(),
        )
        .unwrap();
        let s = fourier_coefficients(&f, 3).unwrap();
        let back = series_synthesize(&s, &Grid::new(ts, 0, n).unwrap()).unwrap();
        assert!(max_diff(back.samples(), f.samples()) < 1e-10);
    }

    #[test]
    fn gibbs_overshoot_of_truncated_square_wave() {
        // Analytic coefficients of the ±1 square wave: C_n = 2/(jπn) for odd n.
        let n_max = 101;
        let coeffs = (-(n_max as i64)..=n_max as i64)
            .map(|k| if k % 2 != 0 { Complex64::new(0.0, -2.0 / (PI * k as f64)) } else { ZERO })
            .collect();
        let s = SeriesSpectrum::new(1.0, n_max, coeffs).unwrap();
        // Dense search just after the jump at t = 0.
        let grid = Grid::new(1e-5, 0, 2000).unwrap();
        let peak = series_synthesize(&s, &grid).unwrap().samples().iter().map(|v| v.re).fold(f64::MIN, f64::max);
        let overshoot = (peak - 1.0) / 2.0;
        assert!((overshoot - 0.09).abs() <= 0.01, "overshoot {overshoot}");
    }

    #[test]
    fn eigencheck_self_pairing_and_constant() {
        let n = 16;
        let ts = 0.25;
        let t = n as f64 * ts;
        let xn = harmonic_sampled(3, n, ts).unwrap();
        let r = fs_eigencheck(&xn, 3).unwrap();
        assert!((r.scale - t).abs() < 1e-12);
        assert!(r.residual <= 1e-12 * t);
        let konst = periodic(ts, n, |_| c(1.5));
        let r = fs_eigencheck(&konst, 2).unwrap();
        assert!(r.residual < 1e-12 && r.scale < 1e-12);
        assert!(fs_eigencheck(&konst, 8).is_err());
    }

    #[test]
    fn dft_examples() {
        let d = dft(&PeriodicDiscreteSignal::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(d.values(), &[ONE; 4]);
        let d = dft(&PeriodicDiscreteSignal::from_real(&[1.0; 4]).unwrap());
        assert!(max_diff(d.values(), &[c(4.0), ZERO, ZERO, ZERO]) < 1e-15);
        let d = dft(&PeriodicDiscreteSignal::new(vec![ONE, Complex64::new(0.0, 1.0)]).unwrap());
        assert!(max_diff(d.values(), &[Complex64::new(1.0, 1.0), Complex64::new(1.0, -1.0)]) < 1e-15);
        assert_eq!(d.value(2), d.value(0));
        assert_eq!(d.value(-1), d.value(1));
    }

    #[test]
    fn dft_matches_naive_oracle() {
        let x: Vec<Complex64> = (0..13).map(|k| Complex64::new((k as f64 * 0.7).sin(), (k * k) as f64 * 0.01)).collect();
        let d = dft(&PeriodicDiscreteSignal::new(x.clone()).unwrap());
        assert!(max_diff(d.values(), &naive_dft(&x)) < 1e-12);
    }

    #[test]
    fn idft_examples() {
        let f = idft(&DftSpectrum::new(vec![c(4.0), ZERO, ZERO, ZERO]).unwrap());
        assert!(max_diff(f.samples(), &[ONE; 4]) < 1e-15);
        let f = idft(&DftSpectrum::new(vec![ONE; 5]).unwrap());
        assert!(max_diff(f.samples(), PeriodicDiscreteSignal::delta(5).unwrap().samples()) < 1e-15);
        let x: Vec<Complex64> = (0..7).map(|k| Complex64::new(k as f64 - 3.0, 1.0 / (k as f64 + 1.0))).collect();
        let f = PeriodicDiscreteSignal::new(x).unwrap();
        assert!(max_diff(idft(&dft(&f)).samples(), f.samples()) < 1e-12 * 3.0);
    }

    #[test]
    fn dft_equals_periodic_eigenfactor() {
        let n = 12;
        let f = PeriodicDiscreteSignal::new((0..n).map(|k| Complex64::new((k as f64).cos(), 0.3 * k as f64)).collect()).unwrap();
        let d = dft(&f);
        for k in 0..n as i64 {
            let e = exp_factor_periodic_discrete(&f, &ExpParam::discrete(unit_root(k, n)).unwrap()).unwrap().value;
            assert!((e - d.value(k)).norm() < 1e-13 * 10.0);
        }
    }

    #[test]
    fn orthogonality_examples() {
        let r = dft_orthogonality(0, 0, 4).unwrap();
        assert!(r.residual < 1e-15 && (r.scale - 4.0).abs() < 1e-15);
        assert!(dft_orthogonality(1, 2, 8).unwrap().residual < 1e-12);
        let r = dft_orthogonality(3, 3, 8).unwrap();
        assert!(r.residual < 1e-12 && (r.scale - 8.0).abs() < 1e-12);
        assert!(dft_orthogonality(8, 0, 8).is_err());
    }

    fn unit_pulse(ts: f64) -> SampledSignal {
        let half = (0.5 / ts).round() as i64;
        sample_function(|_| ONE, ts, -half, 2 * half as usize).unwrap()
    }

    #[test]
    fn pulse_spectrum() {
        let f = unit_pulse(1.0 / 512.0);
        let s = fourier_transform(&f, &Grid::new(PI, 1, 1).unwrap()).unwrap();
        assert!((s.values()[0] - c(2.0 / PI)).norm() < 5e-3);

        let d = fourier_transform(&SampledSignal::delta_tilde(1e-3).unwrap(), &Grid::symmetric(1.0, 10).unwrap()).unwrap();
        assert!(d.values().iter().all(|v| (v - ONE).norm() < 1e-12));
    }

    #[test]
    fn real_even_signal_has_real_even_spectrum() {
        let ts = 0.05;
        let f = sample_function(|t| c((-t * t).exp() * (1.0 + t * t)), ts, -100, 201).unwrap();
        let s = fourier_transform(&f, &Grid::symmetric(0.25, 40).unwrap()).unwrap();
        let v = s.values();
        for i in 0..v.len() {
            assert!(v[i].im.abs() < 1e-10);
            assert!((v[i] - v[v.len() - 1 - i]).norm() < 1e-10);
        }
    }

    #[test]
    fn inverse_of_zero_spectrum_is_zero() {
        let g = Grid::symmetric(0.5, 8).unwrap();
        let s = TransformSpectrum::new(g, vec![ZERO; g.count]).unwrap();
        let out = inverse_fourier_transform(&s, &Grid::new(0.1, -3, 7).unwrap()).unwrap();
        assert!(out.samples().iter().all(|v| *v == ZERO));
    }

    // One full period of the sampled spectrum, [-ω_s/2, ω_s/2), with Δω small
    // enough that the time-domain period 2π/Δω contains the pulse.
    fn one_period_band(ts: f64, dw: f64) -> Grid {
        let per = (TAU / ts / dw).round() as i64;
        Grid::new(dw, -per / 2, per as usize).unwrap()
    }

    #[test]
    fn pulse_round_trip() {
        let ts = 0.05;
        let dw = TAU / 40.0;
        let f = unit_pulse(ts);
        let band = one_period_band(ts, dw);
        let s = fourier_transform(&f, &band).unwrap();
        let back = inverse_fourier_transform(&s, &Grid::new(ts, f.start(), f.len()).unwrap()).unwrap();
        assert!(max_diff(back.samples(), f.samples()) <= 0.02);
    }

    #[test]
    fn shifted_pulse_round_trip() {
        let ts = 0.05;
        let dw = TAU / 40.0;
        let f = unit_pulse(ts);
        let lag = 7;
        let t0 = lag as f64 * ts;
        let band = one_period_band(ts, dw);
        let s = fourier_transform(&f, &band).unwrap();
        let shifted_spec: Vec<Complex64> =
            s.omegas().zip(s.values()).map(|(w, v)| v * Complex64::new(0.0, -w * t0).exp()).collect();
        let shifted_spec = TransformSpectrum::new(band, shifted_spec).unwrap();
        let g = f.shift(lag);
        let back = inverse_fourier_transform(&shifted_spec, &Grid::new(ts, g.start() - 5, g.len() + 10).unwrap()).unwrap();
        let expect: Vec<Complex64> = back.iter().map(|(k, _)| g.value(k)).collect();
        assert!(max_diff(back.samples(), &expect) <= 0.02);
    }

    #[test]
    fn discretization_bridge_for_pulse() {
        let ts = 1.0 / 64.0;
        let f = unit_pulse(ts);
        let report = ft_discretize(&f, 256, 20).unwrap();
        assert!(report.residual.within(1e-9));
        assert_eq!(report.rows.len(), 41);

        let zero = SampledSignal::new(ts, -3, vec![ZERO; 6]).unwrap();
        let report = ft_discretize(&zero, 16, 3).unwrap();
        assert_eq!(report.residual.residual, 0.0);

        assert_eq!(ft_discretize(&f, 32, 3), Err(Error::SupportExceedsPeriod { support: 64, period: 32 }));
        assert!(matches!(ft_discretize(&f, 256, 128), Err(Error::Aliasing { .. })));
    }

    #[test]
    fn periodization_without_overlap_is_identity() {
        let g = Grid::symmetric(0.5, 10).unwrap();
        let values: Vec<Complex64> = g.points().map(|w| if w.abs() < 2.0 { c(4.0 - w * w) } else { ZERO }).collect();
        let s = TransformSpectrum::new(g, values.clone()).unwrap();
        for r in 1..4 {
            let p = periodize_spectrum(&s, 11.0, r).unwrap();
            assert_eq!(p.spectrum.values(), &values[..]);
        }
        assert!(periodize_spectrum(&s, 0.7, 1).is_err());
        assert!(periodize_spectrum(&s, 11.0, 0).is_err());
    }

    #[test]
    fn periodization_tail_bound_covers_dropped_replicas() {
        let ts = 1.0 / 128.0;
        let f = unit_pulse(ts);
        let dw = PI / 8.0;
        let omega_s = 4.0 * PI;
        let wide = Grid::symmetric(dw, 8 * 40).unwrap();
        let s = fourier_transform(&f, &wide).unwrap();
        let p3 = periodize_spectrum(&s, omega_s, 3).unwrap();
        let p4 = periodize_spectrum(&s, omega_s, 4).unwrap();
        let base: Vec<usize> = (0..wide.count).filter(|&i| wide.point(i).abs() < omega_s / 2.0).collect();
        let diff = base.iter().map(|&i| (p3.spectrum.values()[i] - p4.spectrum.values()[i]).norm()).fold(0.0, f64::max);
        assert!(diff > 0.0);
        assert!(diff <= p3.tail_bound);
        assert!(p4.tail_bound <= p3.tail_bound);
    }

    #[test]
    fn dft_versus_series_for_cosine() {
        let n = 8;
        let f_d = PeriodicDiscreteSignal::new((0..n).map(|k| c((TAU * k as f64 / n as f64).cos())).collect()).unwrap();
        let series = SeriesSpectrum::new(1.0, 3, vec![ZERO, ZERO, c(0.5), ZERO, c(0.5), ZERO, ZERO]).unwrap();
        let report = dft_vs_series(&f_d, &series).unwrap();
        assert!(report.residual.within(1e-12));
        let d = dft(&f_d);
        assert!((d.value(1) - c(4.0)).norm() < 1e-12 && (d.value(7) - c(4.0)).norm() < 1e-12);

        let wide = SeriesSpectrum::new(1.0, 4, vec![ZERO; 9]).unwrap();
        assert!(matches!(dft_vs_series(&f_d, &wide), Err(Error::Aliasing { .. })));
    }

    #[test]
    fn dft_versus_series_for_constant() {
        let f_d = PeriodicDiscreteSignal::from_real(&[2.5; 6]).unwrap();
        let series = SeriesSpectrum::new(3.0, 0, vec![c(2.5)]).unwrap();
        let report = dft_vs_series(&f_d, &series).unwrap();
        assert!((report.rows[0].1 - c(15.0)).norm() < 1e-13);
        assert!(report.residual.within(1e-13));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn complex_vec(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Complex64>> {
            prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0).prop_map(|(a, b)| Complex64::new(a, b)), len)
        }

        proptest! {
            #[test]
            fn dft_is_linear(x in complex_vec(1..40), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
                let n = x.len();
                let y: Vec<Complex64> = x.iter().rev().map(|v| v * Complex64::new(0.5, -1.0)).collect();
                let combo: Vec<Complex64> = x.iter().zip(&y).map(|(a, b)| a * alpha + b * beta).collect();
                let lhs = dft(&PeriodicDiscreteSignal::new(combo).unwrap());
                let dx = dft(&PeriodicDiscreteSignal::new(x).unwrap());
                let dy = dft(&PeriodicDiscreteSignal::new(y).unwrap());
                let rhs: Vec<Complex64> = (0..n).map(|k| dx.values()[k] * alpha + dy.values()[k] * beta).collect();
                let r = Residual::between(lhs.values(), &rhs);
                prop_assert!(r.residual <= 1e-12 * r.scale.max(1.0) * n as f64);
            }

            #[test]
            fn real_input_has_hermitian_spectrum(x in prop::collection::vec(-5.0f64..5.0, 1..40)) {
                let d = dft(&PeriodicDiscreteSignal::from_real(&x).unwrap());
                let n = x.len() as i64;
                let scale = d.values().iter().map(|v| v.norm()).fold(1.0, f64::max);
                for k in 0..n {
                    prop_assert!((d.value(n - k) - d.value(k).conj()).norm() <= 1e-12 * scale);
                }
            }

            #[test]
            fn spectrum_is_periodic(x in complex_vec(1..20), shift in -5i64..5) {
                let d = dft(&PeriodicDiscreteSignal::new(x).unwrap());
                let n = d.period() as i64;
                for k in -n..n {
                    prop_assert_eq!(d.value(k + shift * n), d.value(k));
                }
            }
        }
    }
}
