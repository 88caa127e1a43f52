//! Numerical verification harness.
//!
//! Every identity the library is built on has one registered check. A check
//! evaluates both sides through separate code paths on random inputs and
//! passes when `residual <= tolerance·max(1, scale)`, with `scale` the max-norm
//! of the reference side. Runs are fully determined by the seed and grid.

mod checks;
mod gen;

use rand::SeedableRng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::ensure_step;
use checks::{Cx, Measured, Outcome};

pub use gen_api::*;

/// Grid shared by all checks: `N` samples per period, step `ts`, period
/// `T = N·ts`, harmonic window `|n| <= n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridParams {
    pub n: usize,
    pub ts: f64,
    pub period: f64,
    pub n_max: usize,
}

impl GridParams {
    pub fn new(n: usize, ts: f64, n_max: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPeriod);
        }
        ensure_step(ts)?;
        Ok(Self { n, ts, period: n as f64 * ts, n_max })
    }
}

impl Default for GridParams {
    fn default() -> Self {
        Self::new(64, 1.0 / 64.0, 8).expect("default grid is valid")
    }
}

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub id: String,
    pub description: String,
    pub residual: f64,
    pub scale: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub grid_params: GridParams,
    pub tol_scale: f64,
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    /// True when no check failed; skipped checks do not count against the run.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.status == Status::Failed)
    }
}

/// How a check's tolerance depends on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Both sides are the same finite sums; only rounding separates them.
    Roundoff(f64),
    /// Discretization error `coeff·ts^order`.
    GridOrder { coeff: f64, order: i32 },
}

impl Tolerance {
    pub fn at(&self, ts: f64) -> f64 {
        match *self {
            Tolerance::Roundoff(t) => t,
            Tolerance::GridOrder { coeff, order } => coeff * ts.powi(order),
        }
    }
}

/// One entry of the static catalog.
pub struct CheckSpec {
    pub id: &'static str,
    pub description: &'static str,
    pub tolerance: Tolerance,
    /// Why the tolerance has the value it has.
    pub justification: &'static str,
    run: fn(&mut Cx) -> Outcome,
}

macro_rules! check {
    ($id:literal, $desc:literal, $tol:expr, $why:literal, $run:path) => {
        CheckSpec { id: $id, description: $desc, tolerance: $tol, justification: $why, run: $run }
    };
}

use Tolerance::{GridOrder, Roundoff};

static REGISTRY: &[CheckSpec] = &[
    check!("conv.commutativity", "f*g = g*f, discrete and approximated analog", Roundoff(1e-13),
        "identical products summed in a different order", checks::conv_commutativity),
    check!("conv.associativity", "(f*g)*h = f*(g*h), discrete and approximated analog", Roundoff(1e-12),
        "regrouped sums of at most 16^2 unit-disk products", checks::conv_associativity),
    check!("conv.identity", "delta*f = f*delta = f and the ts-wide pulse of height 1/ts for analog", Roundoff(1e-14),
        "single-term sums; analog side carries one ts·(1/ts) rounding", checks::conv_identity),
    check!("conv.periodic_component", "periodic f⊛g equals one period f_c convolved with g", Roundoff(1e-12),
        "same N-term sums reached through the mixed path", checks::conv_periodic_component),
    check!("conv.mixed_associativity", "(h*f)⊛g = h*(f⊛g) for aperiodic h and periodic f, g", Roundoff(1e-11),
        "regrouped sums of N·16 products", checks::conv_mixed_associativity),
    check!("eigen.analog", "f*e^{at} = F(a)e^{at} with F(a) = ts·Σf(kts)e^{-akts}", Roundoff(1e-11),
        "factoring e^{at} out of a finite sum; exponent magnitudes stay below 25", checks::eigen_analog),
    check!("eigen.discrete", "f*a^k = F(a)a^k with F(a) = Σf(n)a^{-n}", Roundoff(1e-10),
        "factoring a^k out of a finite sum; |a| in [0.5, 2] keeps powers within 2^24", checks::eigen_discrete),
    check!("eigen.periodic_analog", "f⊛e^{at} = F(a)e^{at} over one period for e^{aT} = 1", Roundoff(1e-11),
        "N-term sums with harmonic exponentials", checks::eigen_periodic_analog),
    check!("eigen.periodic_discrete", "f⊛a^k = F(a)a^k over one period for a^N = 1", Roundoff(1e-11),
        "N-term sums; powers of a root of unity by squaring", checks::eigen_periodic_discrete),
    check!("prop.derivative_transfer", "D(f)*g = f*D(g) = D(f*g) for the central difference D", Roundoff(1e-10),
        "difference and convolution commute exactly; edge samples below 1e-20", checks::prop_derivative_transfer),
    check!("prop.derivative_limit", "D(f)*g against the exact derivative of the Gaussian f*g", GridOrder { coeff: 1.0, order: 2 },
        "central difference error ts^2·max|h'''|/6 with max|h'''|/6 below 0.25 for widths >= 0.8", checks::prop_derivative_limit),
    check!("prop.shift", "[f]_a*g = f*[g]_a = [f*g]_a for on-grid shifts", Roundoff(1e-13),
        "shifts relabel indices; the sums reorder only", checks::prop_shift),
    check!("prop.scaling", "f^a*g = (1/|a|)(f*g^{1/a})^a for a in {-1, 2, -2, 3}", Roundoff(1e-10),
        "spectrally accurate Riemann sums of Gaussians on grids ts and ts/|a|", checks::prop_scaling),
    check!("fs.eigen", "(f⊛x_n)(t) = F(n)x_n(t) for band-limited f", Roundoff(1e-11),
        "root-of-unity sums are exact; N-term rounding", checks::fs_eigen),
    check!("fs.inverse", "(F*x̄_t)(n) = T·f(t)·x̄_t(n) with F(n) = T·C_n", Roundoff(1e-11),
        "finite coefficient window covers every harmonic", checks::fs_inverse),
    check!("fs.bridge", "periodic factor at a = jnω₀ equals T·C_n of the generating polynomial", Roundoff(1e-11),
        "root-of-unity sums are exact; N-term rounding", checks::fs_bridge),
    check!("fs.conv_time", "((f⊛g)⊛x_n) = G(n)F(n)x_n", Roundoff(1e-11),
        "root-of-unity sums are exact; N^2-term rounding", checks::fs_conv_time),
    check!("fs.conv_freq", "((F*G)*x̄_t)(n) = T·[T·g(t)f(t)]·x̄_t(n)", Roundoff(1e-11),
        "band-limited inputs make the spectral convolution a finite sum", checks::fs_conv_freq),
    check!("fs.mixed", "((h*u)⊛x_n) = U(n)H(n)x_n for aperiodic h and periodic u", Roundoff(1e-11),
        "root-of-unity sums are exact; N^2-term rounding", checks::fs_mixed),
    check!("dft.eigen", "(f⊛x_n)(k) = F(n)x_n(k) with F the DFT", Roundoff(1e-11),
        "exact N-term sums", checks::dft_eigen),
    check!("dft.inverse", "(F⊛x̄_k)(n) = N·f(k)·x̄_k(n)", Roundoff(1e-11),
        "exact N-term sums", checks::dft_inverse),
    check!("dft.round_trip", "idft(dft(f)) = f", Roundoff(1e-12),
        "two N-term sums with index-reduced twiddles", checks::dft_round_trip),
    check!("dft.orthogonality", "x_m⊛x_n = N·δ(m−n)·x_n for all pairs", Roundoff(1e-11),
        "geometric sums of roots of unity", checks::dft_orthogonality_all),
    check!("dft.factor_consistency", "dft(f)(n) equals the periodic discrete factor at a = e^{jn2π/N}", Roundoff(1e-12),
        "same sum; powers by squaring against reduced twiddles", checks::dft_factor_consistency),
    check!("ft.eigen", "(f*x_ω)(t) = F(ω)x_ω(t)", Roundoff(1e-11),
        "factoring e^{jωt} out of a finite sum", checks::ft_eigen),
    check!("ft.inverse", "(F*x̄_t)(ω) = 2π·f(t)·x̄_t(ω) on one period of the sampled spectrum", Roundoff(1e-11),
        "Δω = 2π/(M·ts) with M above the support makes the band sum exact", checks::ft_inverse),
    check!("ft.conv_time", "FT(f*g) = F·G", Roundoff(1e-11),
        "the Riemann convolution theorem holds term by term", checks::ft_conv_time),
    check!("ft.conv_freq", "F⊛G over one spectral period equals 2π·FT(f·g)", Roundoff(1e-11),
        "Δω = 2π/(M·ts) with M above the support makes the band sum exact", checks::ft_conv_freq),
    check!("ft.derivative", "FT(D f)(ω) = jω·F(ω) for a smooth Gaussian", GridOrder { coeff: 4.0, order: 2 },
        "sin(ωts)/ts − ω ≈ ω^3ts^2/6; max|ω^3F|/6 is below 2.6 for widths >= 0.8, |β| <= 1", checks::ft_derivative),
    check!("ft.time_shift", "FT([f]_{t0})(ω) = e^{-jωt0}F(ω)", Roundoff(1e-11),
        "shift relabels the summation index", checks::ft_time_shift),
    check!("ft.duality", "FT of F(t) equals 2π·f(−ω)", Roundoff(1e-9),
        "Riemann sums of Gaussians converge faster than any power of ts", checks::ft_duality),
    check!("ft.time_scaling", "FT(f^a)(ω) = F(ω/a)/|a| for a in {-1, 2, -2, 3}", Roundoff(1e-10),
        "spectrally accurate Riemann sums of Gaussians on grids ts and |a|·ts", checks::ft_time_scaling),
    check!("ft.discretize", "F(nω₀) = T·C_n of the periodic extension of f", Roundoff(1e-11),
        "same Riemann sums regrouped by the fold onto one period", checks::ft_discretize_check),
    check!("ft.periodization", "ts·Σf(kts)e^{-jωkts} equals Σ_r F(ω − rω_s) for a narrow Gaussian", Roundoff(1e-10),
        "Poisson summation is exact; replicas beyond |r| = 3 are below e^{-70}", checks::ft_periodization),
    check!("ft.sampled_wtform", "(G⊛x_k)(ω) = g(k)x_k(ω) with G = F*/2π and g(k) = f*(−k)", Roundoff(1e-11),
        "one spectral period of M roots of unity; support below M", checks::ft_sampled_wtform),
    check!("ft.sampled_twform", "(g*x̄_ω)(k) = ω_s·G(ω)·x̄_ω(k) with G from the periodized exact spectrum", Roundoff(1e-10),
        "Poisson summation is exact; replicas beyond |r| = 3 are below e^{-70}", checks::ft_sampled_twform),
    check!("dft.vs_series", "dft(f_d)(n) = N·C_n for samples of a band-limited periodic signal", Roundoff(1e-10),
        "root-of-unity sums are exact; N-term rounding", checks::dft_vs_series_check),
];

pub fn registry() -> &'static [CheckSpec] {
    REGISTRY
}

// 64-bit FNV-1a; gives each check its own stable stream independent of registry order.
fn stream_id(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

fn run_one(spec: &CheckSpec, grid: GridParams, seed: u64, tol_scale: f64) -> IdentityCheck {
    let mut rng = gen::CheckRng::seed_from_u64(seed);
    rng.set_stream(stream_id(spec.id));
    let mut cx = Cx { grid, rng };
    let tolerance = spec.tolerance.at(grid.ts) * tol_scale;
    let base = |residual, scale, status, note| IdentityCheck {
        id: spec.id.to_string(),
        description: spec.description.to_string(),
        residual,
        scale,
        tolerance,
        passed: status == Status::Passed,
        status,
        note,
    };
    match (spec.run)(&mut cx) {
        Ok(Measured::Residual(r)) => {
            let passed = r.residual <= tolerance * r.scale.max(1.0);
            base(r.residual, r.scale, if passed { Status::Passed } else { Status::Failed }, None)
        }
        Ok(Measured::Skipped(why)) => base(0.0, 0.0, Status::Skipped, Some(why)),
        Err(e) => base(f64::INFINITY, 0.0, Status::Failed, Some(e.to_string())),
    }
}

/// Runs the full catalog with declared tolerances multiplied by `tol_scale`.
///
/// Checks run on worker threads; the report lists them in registry order.
pub fn run(grid: GridParams, seed: u64, tol_scale: f64) -> Report {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(REGISTRY.len());
    let mut slots: Vec<Option<IdentityCheck>> = vec![None; REGISTRY.len()];
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..REGISTRY.len())
                        .step_by(workers)
                        .map(|i| (i, run_one(&REGISTRY[i], grid, seed, tol_scale)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, check) in h.join().expect("check thread panicked") {
                slots[i] = Some(check);
            }
        }
    });
    Report { seed, grid_params: grid, tol_scale, checks: slots.into_iter().map(|c| c.expect("every slot filled")).collect() }
}

/// [`run`] with the declared tolerances.
pub fn run_all(grid: GridParams, seed: u64) -> Report {
    run(grid, seed, 1.0)
}

/// Random instances shared with the acceptance suite.
mod gen_api {
    use num_complex::Complex64;
    use rand::SeedableRng;

    use crate::error::Result;

    /// `n` random `(f, a)` pairs with both sides of the discrete eigenrelation
    /// on an 8-wide window: direct sums `Σf(n)a^{k−n}` and `F(a)·a^k`.
    pub fn discrete_eigen_instances(seed: u64, n: usize) -> Result<Vec<(Vec<Complex64>, Vec<Complex64>)>> {
        let mut rng = super::gen::CheckRng::seed_from_u64(seed);
        (0..n).map(|_| super::checks::discrete_eigen_instance(&mut rng)).collect()
    }
}
