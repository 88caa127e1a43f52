//! Check bodies. Each computes both sides of one identity through separate code
//! paths and returns the worst residual over its trials.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use super::gen::{self, CheckRng, Gaussian, TrigPoly};
use super::GridParams;
use crate::convolution::*;
use crate::error::Result;
use crate::fourier::*;
use crate::signal::*;

pub(crate) enum Measured {
    Residual(Residual),
    Skipped(String),
}

pub(crate) type Outcome = Result<Measured>;

pub(crate) struct Cx {
    pub grid: GridParams,
    pub rng: CheckRng,
}

impl Cx {
    fn n(&self) -> usize {
        self.grid.n
    }

    fn ts(&self) -> f64 {
        self.grid.ts
    }

    fn period(&self) -> f64 {
        self.grid.period
    }

    fn omega0(&self) -> f64 {
        TAU / self.grid.period
    }

    fn window(&self) -> i64 {
        self.grid.n_max as i64
    }
}

/// Keeps the trial with the largest normalized residual.
#[derive(Default)]
struct Worst(Option<Residual>);

impl Worst {
    fn add(&mut self, r: Residual) {
        let ratio = |r: &Residual| r.residual / r.scale.max(1.0);
        match &self.0 {
            Some(w) if ratio(w) >= ratio(&r) => {}
            _ => self.0 = Some(r),
        }
    }

    fn pair(&mut self, lhs: &[Complex64], rhs: &[Complex64]) {
        self.add(Residual::between(lhs, rhs));
    }

    /// Compares `lhs(k)` with `rhs(k)` over `k = lo..=hi`.
    fn range(&mut self, lo: i64, hi: i64, lhs: impl Fn(i64) -> Complex64, rhs: impl Fn(i64) -> Complex64) {
        let l: Vec<Complex64> = (lo..=hi).map(&lhs).collect();
        let r: Vec<Complex64> = (lo..=hi).map(&rhs).collect();
        self.pair(&l, &r);
    }

    fn done(self) -> Outcome {
        Ok(Measured::Residual(self.0.unwrap_or(Residual { residual: 0.0, scale: 0.0 })))
    }
}

fn discrete_match(w: &mut Worst, a: &DiscreteSignal, b: &DiscreteSignal) {
    let lo = a.start().min(b.start());
    let hi = a.end().max(b.end());
    w.range(lo, hi, |k| a.value(k), |k| b.value(k));
}

fn sampled_match(w: &mut Worst, a: &SampledSignal, b: &SampledSignal) {
    let lo = a.start().min(b.start());
    let hi = a.end().max(b.end());
    w.range(lo, hi, |k| a.value(k), |k| b.value(k));
}

fn scaled(values: &[Complex64], by: Complex64) -> Vec<Complex64> {
    values.iter().map(|v| v * by).collect()
}

fn alias_free(cx: &Cx) -> Option<Measured> {
    if 2 * cx.grid.n_max < cx.n() {
        None
    } else {
        Some(Measured::Skipped(format!("n_max = {} needs N > {}", cx.grid.n_max, 2 * cx.grid.n_max)))
    }
}

fn random_omegas(rng: &mut CheckRng, half: usize) -> Result<Grid> {
    Grid::symmetric(rng.random_range(0.1..0.5), half)
}

// Convolution algebra.

pub(crate) fn conv_commutativity(cx: &mut Cx) -> Outcome {
    let mut w = Worst::default();
    for _ in 0..8 {
        let f = gen::discrete(&mut cx.rng, 16);
        let g = gen::discrete(&mut cx.rng, 16);
        discrete_match(&mut w, &discrete_convolve(&f, &g), &discrete_convolve(&g, &f));
        let f = gen::sampled(&mut cx.rng, cx.grid.ts, 16);
        let g = gen::sampled(&mut cx.rng, cx.grid.ts, 16);
        sampled_match(&mut w, &approx_analog_convolve(&f, &g)?, &approx_analog_convolve(&g, &f)?);
    }
    w.done()
}

pub(crate) fn conv_associativity(cx: &mut Cx) -> Outcome {
    let mut w = Worst::default();
    for _ in 0..8 {
        let [f, g, h] = [(); 3].map(|_| gen::discrete(&mut cx.rng, 16));
        let lhs = discrete_convolve(&discrete_convolve(&f, &g), &h);
        let rhs = discrete_convolve(&f, &discrete_convolve(&g, &h));
        discrete_match(&mut w, &lhs, &rhs);
        let [f, g, h] = [(); 3].map(|_| gen::sampled(&mut cx.rng, cx.grid.ts, 16));
        let lhs = approx_analog_convolve(&approx_analog_convolve(&f, &g)?, &h)?;
        let rhs = approx_analog_convolve(&f, &approx_analog_convolve(&g, &h)?)?;
        sampled_match(&mut w, &lhs, &rhs);
    }
    w.done()
}

pub(crate) fn conv_identity(cx: &mut Cx) -> Outcome {
    let mut w = Worst::default();
    let delta = DiscreteSignal::delta();
    let delta_tilde = SampledSignal::delta_tilde(cx.ts())?;
    for _ in 0..8 {
        let f = gen::discrete(&mut cx.rng, 16);
        discrete_match(&mut w, &discrete_convolve(&delta, &f), &f);
        discrete_match(&mut w, &discrete_convolve(&f, &delta), &f);
        let f = gen::sampled(&mut cx.rng, cx.grid.ts, 16);
        sampled_match(&mut w, &approx_analog_convolve(&delta_tilde, &f)?, &f);
        sampled_match(&mut w, &approx_analog_convolve(&f, &delta_tilde)?, &f);
    }
    w.done()
}

pub(crate) fn conv_periodic_component(cx: &mut Cx) -> Outcome {
    let (n, ts) = (cx.n(), cx.ts());
    let mut w = Worst::default();
    for _ in 0..4 {
        let f = gen::periodic_discrete(&mut cx.rng, n);
        let g = gen::periodic_discrete(&mut cx.rng, n);
        let lhs = periodic_convolve_discrete(&f, &g)?;
        let f_c = DiscreteSignal::new(0, f.samples().to_vec())?;
        let g_c = DiscreteSignal::new(0, g.samples().to_vec())?;
        w.pair(lhs.samples(), mixed_convolve_discrete(&f_c, &g).samples());
        w.pair(lhs.samples(), mixed_convolve_discrete(&g_c, &f).samples());

        let f = gen::periodic_sampled(&mut cx.rng, n, ts);
        let g = gen::periodic_sampled(&mut cx.rng, n, ts);
        let lhs = periodic_convolve_analog(&f, &g)?;
        let f_c = SampledSignal::new(ts, 0, f.samples().to_vec())?;
        w.pair(lhs.samples(), mixed_convolve_analog(&f_c, &g)?.samples());
    }
    w.done()
}

pub(crate) fn conv_mixed_associativity(cx: &mut Cx) -> Outcome {
    let (n, ts) = (cx.n(), cx.ts());
    let mut w = Worst::default();
    for _ in 0..4 {
        let h = gen::discrete(&mut cx.rng, 16);
        let f = gen::periodic_discrete(&mut cx.rng, n);
        let g = gen::periodic_discrete(&mut cx.rng, n);
        let lhs = periodic_convolve_discrete(&mixed_convolve_discrete(&h, &f), &g)?;
        let rhs = mixed_convolve_discrete(&h, &periodic_convolve_discrete(&f, &g)?);
        w.pair(lhs.samples(), rhs.samples());

        let h = gen::sampled(&mut cx.rng, ts, 16);
        let f = gen::periodic_sampled(&mut cx.rng, n, ts);
        let g = gen::periodic_sampled(&mut cx.rng, n, ts);
        let lhs = periodic_convolve_analog(&mixed_convolve_analog(&h, &f)?, &g)?;
        let rhs = mixed_convolve_analog(&h, &periodic_convolve_analog(&f, &g)?)?;
        w.pair(lhs.samples(), rhs.samples());
    }
    w.done()
}

// Convolution with exponentials.

pub(crate) fn eigen_analog(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..16 {
        let f = gen::sampled(&mut cx.rng, ts, 16);
        let a = Complex64::new(cx.rng.random_range(-1.0..1.0), cx.rng.random_range(-20.0..20.0));
        let p = ExpParam::analog(a)?;
        let factor = exp_factor_analog(&f, &p)?.value;
        let k0: i64 = cx.rng.random_range(-16..16);
        let lhs = (k0..k0 + 8).map(|k| approx_analog_convolve_exponential(&f, &p, k as f64 * ts)).collect::<Result<Vec<_>>>()?;
        let rhs = (k0..k0 + 8).map(|k| eval_analog_exponential(&p, k as f64 * ts).map(|e| factor * e)).collect::<Result<Vec<_>>>()?;
        w.pair(&lhs, &rhs);
    }
    w.done()
}

pub(crate) fn eigen_discrete(cx: &mut Cx) -> Outcome {
    let mut w = Worst::default();
    for _ in 0..16 {
        let (lhs, rhs) = discrete_eigen_instance(&mut cx.rng)?;
        w.pair(&lhs, &rhs);
    }
    w.done()
}

/// One random `(f, a)` instance: direct sums `Σ f(n)a^{k−n}` against
/// `F(a)·a^k` on an 8-wide window.
pub(crate) fn discrete_eigen_instance(rng: &mut CheckRng) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let f = gen::discrete(rng, 16);
    let a = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..TAU));
    let p = ExpParam::discrete(a)?;
    let factor = exp_factor_discrete(&f, &p)?.value;
    let k0: i64 = rng.random_range(-8..8);
    let lhs = (k0..k0 + 8).map(|k| discrete_convolve_exponential(&f, &p, k)).collect::<Result<Vec<_>>>()?;
    let rhs = (k0..k0 + 8).map(|k| eval_discrete_exponential(&p, k).map(|e| factor * e)).collect::<Result<Vec<_>>>()?;
    Ok((lhs, rhs))
}

pub(crate) fn eigen_periodic_analog(cx: &mut Cx) -> Outcome {
    let (n, ts) = (cx.n(), cx.ts());
    let mut w = Worst::default();
    for _ in 0..8 {
        let f = gen::periodic_sampled(&mut cx.rng, n, ts);
        // e^{aT} = 1 so the periodic extension of e^{at} on [0, T) is e^{at} itself.
        let m = cx.rng.random_range(-3 * n as i64..=3 * n as i64);
        let factor = exp_factor_periodic_analog(&f, &ExpParam::angular(m as f64 * cx.omega0())?)?.value;
        let g = harmonic_sampled(m, n, ts)?;
        w.pair(periodic_convolve_analog(&f, &g)?.samples(), &scaled(g.samples(), factor));
    }
    w.done()
}

pub(crate) fn eigen_periodic_discrete(cx: &mut Cx) -> Outcome {
    let n = cx.n();
    let mut w = Worst::default();
    for _ in 0..8 {
        let f = gen::periodic_discrete(&mut cx.rng, n);
        let m = cx.rng.random_range(-3 * n as i64..=3 * n as i64);
        let factor = exp_factor_periodic_discrete(&f, &ExpParam::discrete(unit_root(m, n))?)?.value;
        let g = harmonic_discrete(m, n)?;
        w.pair(periodic_convolve_discrete(&f, &g)?.samples(), &scaled(g.samples(), factor));
    }
    w.done()
}

// Operational properties.

fn smooth_pair(rng: &mut CheckRng, freq: f64) -> (Gaussian, Gaussian) {
    (Gaussian::random(rng, (0.8, 1.2), 1.0, freq), Gaussian::random(rng, (0.8, 1.2), 1.0, freq))
}

pub(crate) fn prop_derivative_transfer(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..2 {
        let (fg, gg) = smooth_pair(&mut cx.rng, 2.0);
        let f = fg.sample(ts, 10.0);
        let g = gg.sample(ts, 10.0);
        let whole = derivative(&approx_analog_convolve(&f, &g)?)?;
        let left = approx_analog_convolve(&derivative(&f)?, &g)?;
        let right = approx_analog_convolve(&f, &derivative(&g)?)?;
        let (lo, hi) = (whole.start(), whole.end() - 1);
        w.range(lo, hi, |k| left.value(k), |k| whole.value(k));
        w.range(lo, hi, |k| right.value(k), |k| whole.value(k));
    }
    w.done()
}

pub(crate) fn prop_derivative_limit(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..2 {
        let (fg, gg) = smooth_pair(&mut cx.rng, 0.0);
        let exact = fg.convolve(&gg);
        let lhs = approx_analog_convolve(&derivative(&fg.sample(ts, 10.0))?, &gg.sample(ts, 10.0))?;
        w.range(lhs.start(), lhs.end() - 1, |k| lhs.value(k), |k| exact.derivative(k as f64 * ts));
    }
    w.done()
}

pub(crate) fn prop_shift(cx: &mut Cx) -> Outcome {
    let (n, ts) = (cx.n(), cx.ts());
    let mut w = Worst::default();
    for _ in 0..8 {
        let lag = cx.rng.random_range(-20..=20);
        let f = gen::discrete(&mut cx.rng, 16);
        let g = gen::discrete(&mut cx.rng, 16);
        let whole = discrete_convolve(&f, &g).shift(lag);
        discrete_match(&mut w, &discrete_convolve(&f.shift(lag), &g), &whole);
        discrete_match(&mut w, &discrete_convolve(&f, &g.shift(lag)), &whole);

        let f = gen::sampled(&mut cx.rng, ts, 16);
        let g = gen::sampled(&mut cx.rng, ts, 16);
        let whole = approx_analog_convolve(&f, &g)?.shift(lag);
        sampled_match(&mut w, &approx_analog_convolve(&f.shift(lag), &g)?, &whole);
        sampled_match(&mut w, &approx_analog_convolve(&f, &g.shift(lag))?, &whole);

        let f = gen::periodic_discrete(&mut cx.rng, n);
        let g = gen::periodic_discrete(&mut cx.rng, n);
        let whole = periodic_convolve_discrete(&f, &g)?.shift(lag);
        w.pair(periodic_convolve_discrete(&f.shift(lag), &g)?.samples(), whole.samples());
        w.pair(periodic_convolve_discrete(&f, &g.shift(lag))?.samples(), whole.samples());
    }
    w.done()
}

const SCALES: [i64; 4] = [-1, 2, -2, 3];

pub(crate) fn prop_scaling(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for &a in &SCALES {
        let (fg, gg) = smooth_pair(&mut cx.rng, 1.0);
        let f = fg.sample(ts, 10.0);
        let g = gg.sample(ts, 10.0);
        // g^{1/a}(t) = g(t/a), sampled on the same grid.
        let g_inv = gg.dilate(a as f64).sample(ts, 10.0);
        let lhs = approx_analog_convolve(&scale_time(&f, a)?, &g)?;
        let rhs = scale_time(&approx_analog_convolve(&f, &g_inv)?, a)?;
        let weight = 1.0 / a.unsigned_abs() as f64;
        let lo = lhs.start().min(rhs.start());
        let hi = (lhs.end()).max(rhs.end());
        w.range(lo, hi, |k| lhs.value(k), |k| rhs.value(k) * weight);
    }
    w.done()
}

// Fourier series.

pub(crate) fn fs_eigen(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let mut w = Worst::default();
    for _ in 0..2 {
        let f = TrigPoly::random(&mut cx.rng, cx.grid.n_max).sampled(cx.n(), cx.ts());
        for n in -cx.window()..=cx.window() {
            w.add(fs_eigencheck(&f, n)?);
        }
    }
    w.done()
}

fn scaled_coefficients(s: &SeriesSpectrum) -> Result<DiscreteSignal> {
    DiscreteSignal::new(-(s.n_max() as i64), s.iter().map(|(n, _)| s.factor(n)).collect())
}

pub(crate) fn fs_inverse(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let (n, t) = (cx.n(), cx.period());
    let f = TrigPoly::random(&mut cx.rng, cx.grid.n_max).sampled(n, cx.ts());
    let big_f = scaled_coefficients(&fourier_coefficients(&f, cx.grid.n_max)?)?;
    let span = cx.window() + 2;
    let mut w = Worst::default();
    for k in 0..n as i64 {
        // x̄_t(n) = e^{−jnω₀t} at t = k·ts.
        let p = ExpParam::discrete(unit_root(-k, n))?;
        let lhs = (-span..=span).map(|m| discrete_convolve_exponential(&big_f, &p, m)).collect::<Result<Vec<_>>>()?;
        let rhs: Vec<Complex64> = (-span..=span).map(|m| f.value(k) * t * unit_root(-k * m, n)).collect();
        w.pair(&lhs, &rhs);
    }
    w.done()
}

pub(crate) fn fs_bridge(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let (n, t) = (cx.n(), cx.period());
    let mut w = Worst::default();
    for _ in 0..4 {
        let poly = TrigPoly::random(&mut cx.rng, cx.grid.n_max);
        let f = poly.sampled(n, cx.ts());
        let window = -cx.window()..=cx.window();
        let lhs = window
            .clone()
            .map(|m| exp_factor_periodic_analog(&f, &ExpParam::angular(m as f64 * cx.omega0())?).map(|e| e.value))
            .collect::<Result<Vec<_>>>()?;
        let rhs: Vec<Complex64> = window.map(|m| poly.coefficient(m) * t).collect();
        w.pair(&lhs, &rhs);
    }
    w.done()
}

pub(crate) fn fs_conv_time(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let (n, ts) = (cx.n(), cx.ts());
    let f = TrigPoly::random(&mut cx.rng, cx.grid.n_max).sampled(n, ts);
    let g = TrigPoly::random(&mut cx.rng, cx.grid.n_max).sampled(n, ts);
    let fg = periodic_convolve_analog(&f, &g)?;
    let mut w = Worst::default();
    for m in -cx.window()..=cx.window() {
        let p = ExpParam::angular(m as f64 * cx.omega0())?;
        let product = exp_factor_periodic_analog(&f, &p)?.value * exp_factor_periodic_analog(&g, &p)?.value;
        let xn = harmonic_sampled(m, n, ts)?;
        w.pair(periodic_convolve_analog(&fg, &xn)?.samples(), &scaled(xn.samples(), product));
    }
    w.done()
}

pub(crate) fn fs_conv_freq(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let (n, ts, t) = (cx.n(), cx.ts(), cx.period());
    let f = TrigPoly::random(&mut cx.rng, cx.grid.n_max).sampled(n, ts);
    let g = TrigPoly::random(&mut cx.rng, cx.grid.n_max).sampled(n, ts);
    let big_f = scaled_coefficients(&fourier_coefficients(&f, cx.grid.n_max)?)?;
    let big_g = scaled_coefficients(&fourier_coefficients(&g, cx.grid.n_max)?)?;
    let fg = discrete_convolve(&big_f, &big_g);
    let span = 2 * cx.window() + 1;
    let mut w = Worst::default();
    for k in 0..n as i64 {
        let p = ExpParam::discrete(unit_root(-k, n))?;
        let lhs = (-span..=span).map(|m| discrete_convolve_exponential(&fg, &p, m)).collect::<Result<Vec<_>>>()?;
        let weight = t * (t * g.value(k) * f.value(k));
        let rhs: Vec<Complex64> = (-span..=span).map(|m| weight * unit_root(-k * m, n)).collect();
        w.pair(&lhs, &rhs);
    }
    w.done()
}

pub(crate) fn fs_mixed(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let (n, ts) = (cx.n(), cx.ts());
    let mut w = Worst::default();
    for _ in 0..2 {
        let h = gen::sampled(&mut cx.rng, ts, n);
        let u = TrigPoly::random(&mut cx.rng, cx.grid.n_max).sampled(n, ts);
        let hu = mixed_convolve_analog(&h, &u)?;
        for m in -cx.window()..=cx.window() {
            let p = ExpParam::angular(m as f64 * cx.omega0())?;
            let product = exp_factor_periodic_analog(&u, &p)?.value * exp_factor_analog(&h, &p)?.value;
            let xn = harmonic_sampled(m, n, ts)?;
            w.pair(periodic_convolve_analog(&hu, &xn)?.samples(), &scaled(xn.samples(), product));
        }
    }
    w.done()
}

// DFT.

pub(crate) fn dft_eigen(cx: &mut Cx) -> Outcome {
    let n = cx.n();
    let f = gen::periodic_discrete(&mut cx.rng, n);
    let spectrum = dft(&f);
    let mut w = Worst::default();
    for m in 0..n as i64 {
        let xn = harmonic_discrete(m, n)?;
        w.pair(periodic_convolve_discrete(&f, &xn)?.samples(), &scaled(xn.samples(), spectrum.value(m)));
    }
    w.done()
}

pub(crate) fn dft_inverse(cx: &mut Cx) -> Outcome {
    let n = cx.n();
    let f = gen::periodic_discrete(&mut cx.rng, n);
    let spectrum = PeriodicDiscreteSignal::new(dft(&f).values().to_vec())?;
    let mut w = Worst::default();
    for k in 0..n as i64 {
        let xbar = harmonic_discrete(-k, n)?;
        let weight = f.value(k) * n as f64;
        w.pair(periodic_convolve_discrete(&spectrum, &xbar)?.samples(), &scaled(xbar.samples(), weight));
    }
    w.done()
}

pub(crate) fn dft_round_trip(cx: &mut Cx) -> Outcome {
    let mut w = Worst::default();
    for _ in 0..8 {
        let f = gen::periodic_discrete(&mut cx.rng, cx.grid.n);
        w.pair(idft(&dft(&f)).samples(), f.samples());
    }
    w.done()
}

pub(crate) fn dft_orthogonality_all(cx: &mut Cx) -> Outcome {
    let n = cx.n();
    let mut w = Worst::default();
    for a in 0..n {
        for b in 0..n {
            w.add(dft_orthogonality(a, b, n)?);
        }
    }
    w.done()
}

pub(crate) fn dft_factor_consistency(cx: &mut Cx) -> Outcome {
    let n = cx.n();
    let mut w = Worst::default();
    for _ in 0..4 {
        let f = gen::periodic_discrete(&mut cx.rng, n);
        let spectrum = dft(&f);
        let factors = (0..n as i64)
            .map(|m| exp_factor_periodic_discrete(&f, &ExpParam::discrete(unit_root(m, n))?).map(|e| e.value))
            .collect::<Result<Vec<_>>>()?;
        w.pair(spectrum.values(), &factors);
    }
    w.done()
}

pub(crate) fn dft_vs_series_check(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let mut w = Worst::default();
    for _ in 0..4 {
        let poly = TrigPoly::random(&mut cx.rng, cx.grid.n_max);
        let report = dft_vs_series(&poly.discrete(cx.n()), &poly.series(cx.period(), cx.grid.n_max))?;
        w.add(report.residual);
    }
    w.done()
}

// Fourier transform.

pub(crate) fn ft_eigen(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..4 {
        let f = gen::sampled(&mut cx.rng, ts, 32);
        let omegas = random_omegas(&mut cx.rng, 20)?;
        let spectrum = fourier_transform(&f, &omegas)?;
        let k0: i64 = cx.rng.random_range(-16..16);
        for (omega, &value) in omegas.points().zip(spectrum.values()) {
            let p = ExpParam::angular(omega)?;
            let lhs = (k0..k0 + 8).map(|k| approx_analog_convolve_exponential(&f, &p, k as f64 * ts)).collect::<Result<Vec<_>>>()?;
            let rhs = (k0..k0 + 8).map(|k| eval_analog_exponential(&p, k as f64 * ts).map(|e| value * e)).collect::<Result<Vec<_>>>()?;
            w.pair(&lhs, &rhs);
        }
    }
    w.done()
}

/// Frequency grid step that makes `M` grid frequencies one period of a
/// spectrum sampled at `ts`.
fn period_step(ts: f64, m: usize) -> f64 {
    TAU / (m as f64 * ts)
}

pub(crate) fn ft_inverse(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..4 {
        let f = gen::sampled(&mut cx.rng, ts, 32);
        // Four spare indices keep the two zero samples either side alias-free.
        let m = f.len() + 4 + cx.rng.random_range(0..8);
        let band = Grid::new(period_step(ts, m), -(m as i64 / 2), m)?;
        let spectrum = fourier_transform(&f, &band)?;
        let back = inverse_fourier_transform(&spectrum, &Grid::new(ts, f.start() - 2, f.len() + 4)?)?;
        sampled_match(&mut w, &back, &f);
    }
    w.done()
}

pub(crate) fn ft_conv_time(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..4 {
        let f = gen::sampled(&mut cx.rng, ts, 24);
        let g = gen::sampled(&mut cx.rng, ts, 24);
        let omegas = random_omegas(&mut cx.rng, 20)?;
        let lhs = fourier_transform(&approx_analog_convolve(&f, &g)?, &omegas)?;
        let big_f = fourier_transform(&f, &omegas)?;
        let big_g = fourier_transform(&g, &omegas)?;
        let rhs: Vec<Complex64> = big_f.values().iter().zip(big_g.values()).map(|(a, b)| a * b).collect();
        w.pair(lhs.values(), &rhs);
    }
    w.done()
}

pub(crate) fn ft_conv_freq(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..4 {
        let start = cx.rng.random_range(-8..=8);
        let len = cx.rng.random_range(1..=24);
        let f = SampledSignal::new(ts, start, gen::complex_vec(&mut cx.rng, len))?;
        let g = SampledSignal::new(ts, start, gen::complex_vec(&mut cx.rng, len))?;
        let product = SampledSignal::new(ts, start, f.samples().iter().zip(g.samples()).map(|(a, b)| a * b).collect())?;
        // One period of the ts-sampled spectra, fine enough that both supports fit.
        let m = len + 1 + cx.rng.random_range(0..4);
        let dw = period_step(ts, m);
        let omegas = Grid::new(dw, 0, m)?;
        let big_f = PeriodicSampledSignal::new(dw, fourier_transform(&f, &omegas)?.values().to_vec())?;
        let big_g = PeriodicSampledSignal::new(dw, fourier_transform(&g, &omegas)?.values().to_vec())?;
        let lhs = periodic_convolve_analog(&big_f, &big_g)?;
        let rhs = scaled(fourier_transform(&product, &omegas)?.values(), Complex64::new(TAU, 0.0));
        w.pair(lhs.samples(), &rhs);
    }
    w.done()
}

pub(crate) fn ft_derivative(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..2 {
        let fg = Gaussian::random(&mut cx.rng, (0.8, 1.2), 1.0, 1.0);
        let f = fg.sample(ts, 10.0);
        let omegas = Grid::covering(fg.freq - 8.0, fg.freq + 8.0, 0.125)?;
        let lhs = fourier_transform(&derivative(&f)?, &omegas)?;
        let big_f = fourier_transform(&f, &omegas)?;
        let rhs: Vec<Complex64> = omegas.points().zip(big_f.values()).map(|(om, v)| Complex64::new(0.0, om) * v).collect();
        w.pair(lhs.values(), &rhs);
    }
    w.done()
}

pub(crate) fn ft_time_shift(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..4 {
        let f = gen::sampled(&mut cx.rng, ts, 32);
        let lag = cx.rng.random_range(-3 * cx.n() as i64..=3 * cx.n() as i64);
        let t0 = lag as f64 * ts;
        let omegas = random_omegas(&mut cx.rng, 20)?;
        let lhs = fourier_transform(&shift_time(&f, t0)?, &omegas)?;
        let big_f = fourier_transform(&f, &omegas)?;
        let rhs: Vec<Complex64> = omegas.points().zip(big_f.values()).map(|(om, v)| v * Complex64::from_polar(1.0, -om * t0)).collect();
        w.pair(lhs.values(), &rhs);
    }
    w.done()
}

pub(crate) fn ft_duality(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..2 {
        let fg = Gaussian::random(&mut cx.rng, (0.7, 1.4), 1.0, 2.0);
        // F(t), the spectrum used as a time signal: centred at β with width 1/σ.
        let reach = 10.0 / fg.width;
        let lo = ((fg.freq - reach) / ts).floor() as i64;
        let hi = ((fg.freq + reach) / ts).ceil() as i64;
        let big_f = sample_function(|t| fg.spectrum(t), ts, lo, (hi - lo + 1) as usize)?;
        let omegas = Grid::covering(-fg.center - 6.0 * fg.width, -fg.center + 6.0 * fg.width, 0.25)?;
        let lhs = fourier_transform(&big_f, &omegas)?;
        let rhs: Vec<Complex64> = omegas.points().map(|om| fg.eval(-om) * TAU).collect();
        w.pair(lhs.values(), &rhs);
    }
    w.done()
}

pub(crate) fn ft_time_scaling(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for &a in &SCALES {
        let fg = Gaussian::random(&mut cx.rng, (0.8, 1.2), 1.0, 1.0);
        let f = fg.sample(ts, 10.0);
        let omegas = Grid::covering(-8.0, 8.0, 0.25)?;
        let lhs = fourier_transform(&scale_time(&f, a)?, &omegas)?;
        let weight = 1.0 / a.unsigned_abs() as f64;
        let rhs = omegas
            .points()
            .map(|om| exp_factor_analog(&f, &ExpParam::angular(om / a as f64)?).map(|e| e.value * weight))
            .collect::<Result<Vec<_>>>()?;
        w.pair(lhs.values(), &rhs);
    }
    w.done()
}

pub(crate) fn ft_discretize_check(cx: &mut Cx) -> Outcome {
    if let Some(skip) = alias_free(cx) {
        return Ok(skip);
    }
    let n = cx.n();
    let mut w = Worst::default();
    for _ in 0..4 {
        let len = cx.rng.random_range(1..=n);
        let start = cx.rng.random_range(-(n as i64)..=n as i64);
        let f = SampledSignal::new(cx.ts(), start, gen::complex_vec(&mut cx.rng, len))?;
        w.add(ft_discretize(&f, n, cx.grid.n_max)?.residual);
    }
    w.done()
}

/// Frequencies per replica period and the replica count kept in the
/// periodization checks.
const PERIOD_POINTS: usize = 64;
const REPLICAS: usize = 3;

/// Gaussian narrow enough that its neighbouring spectral replicas overlap.
fn narrow_gaussian(rng: &mut CheckRng, ts: f64) -> Gaussian {
    Gaussian::random(rng, (0.5 * ts, 0.8 * ts), 2.0 * ts, 0.0)
}

/// `F*` on one base-band period from `R` replicas of the exact spectrum.
fn periodized_exact(g: &Gaussian, ts: f64) -> Result<(Grid, PeriodizedSpectrum)> {
    let m = PERIOD_POINTS as i64;
    let dw = period_step(ts, PERIOD_POINTS);
    let reach = REPLICAS as i64 + 2;
    let wide = Grid::new(dw, -reach * m - m / 2, ((2 * reach + 1) * m) as usize)?;
    let exact = TransformSpectrum::new(wide, wide.points().map(|om| g.spectrum(om)).collect())?;
    let periodized = periodize_spectrum(&exact, TAU / ts, REPLICAS)?;
    Ok((Grid::new(dw, -m / 2, PERIOD_POINTS)?, periodized))
}

fn base_band(wide: &TransformSpectrum, base: &Grid) -> Vec<Complex64> {
    let offset = (base.start - wide.grid().start) as usize;
    wide.values()[offset..offset + base.count].to_vec()
}

pub(crate) fn ft_periodization(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..4 {
        let g = narrow_gaussian(&mut cx.rng, ts);
        let (base, periodized) = periodized_exact(&g, ts)?;
        let sampled = fourier_transform(&g.sample(ts, 12.0), &base)?;
        w.pair(sampled.values(), &base_band(&periodized.spectrum, &base));
    }
    w.done()
}

pub(crate) fn ft_sampled_wtform(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let mut w = Worst::default();
    for _ in 0..4 {
        let f = gen::sampled(&mut cx.rng, ts, 24);
        let m = f.len() + 8 + cx.rng.random_range(0..8);
        let dw = period_step(ts, m);
        let omegas = Grid::new(dw, 0, m)?;
        let g_spec = scaled(fourier_transform(&f, &omegas)?.values(), Complex64::new(1.0 / TAU, 0.0));
        let big_g = PeriodicSampledSignal::new(dw, g_spec)?;
        // g(k) = f*(−k), nonzero for k in [−(end−1), −start]; two zero samples either side.
        for k in -(f.end() - 1) - 2..=-f.start() + 2 {
            let xk = PeriodicSampledSignal::new(dw, (0..m as i64).map(|i| unit_root(k * i, m)).collect())?;
            w.pair(periodic_convolve_analog(&big_g, &xk)?.samples(), &scaled(xk.samples(), f.value(-k)));
        }
    }
    w.done()
}

pub(crate) fn ft_sampled_twform(cx: &mut Cx) -> Outcome {
    let ts = cx.ts();
    let omega_s = TAU / ts;
    let mut w = Worst::default();
    for _ in 0..4 {
        let gauss = narrow_gaussian(&mut cx.rng, ts);
        let f = gauss.sample(ts, 12.0);
        let g = DiscreteSignal::new(-(f.end() - 1), f.samples().iter().rev().copied().collect())?;
        let (base, periodized) = periodized_exact(&gauss, ts)?;
        let big_g = base_band(&periodized.spectrum, &base);
        let k0: i64 = cx.rng.random_range(-16..16);
        for (i, om) in base.points().enumerate().step_by(4) {
            let p = ExpParam::discrete(Complex64::from_polar(1.0, -om * ts))?;
            let lhs = (k0..k0 + 8).map(|k| discrete_convolve_exponential(&g, &p, k)).collect::<Result<Vec<_>>>()?;
            let weight = big_g[i] / TAU * omega_s;
            let rhs: Vec<Complex64> = (k0..k0 + 8).map(|k| weight * Complex64::from_polar(1.0, -om * k as f64 * ts)).collect();
            w.pair(&lhs, &rhs);
        }
    }
    w.done()
}
