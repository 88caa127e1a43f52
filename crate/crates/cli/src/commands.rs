use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, ValueEnum};
use eigenconv::convolution::{
    approx_analog_convolve, discrete_convolve, periodic_convolve_analog, periodic_convolve_discrete,
};
use eigenconv::fourier::{dft, fourier_coefficients, fourier_transform, idft};
use eigenconv::harness::{self, GridParams, Report, DEFAULT_SEED};
use eigenconv::{Complex64, Grid, PeriodicSampledSignal, SampledSignal};
use serde_json::json;

use crate::error::CliError;
use crate::signal_file::{csv_table, parse_real, real, Format, SignalFile};

fn number(s: &str) -> Result<f64, String> {
    parse_real(s).map_err(|e| e.message())
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gen {
    /// Unit pulse on [-1/2, 1/2).
    Pulse,
    /// cos(ω₀t) over one period.
    Cosine,
    /// +1 on the first half period, -1 on the second.
    Square,
}

/// Input file or a built-in test signal.
#[derive(Debug, Args)]
pub struct Source {
    /// Input signal path, `-` for stdin.
    #[arg(required_unless_present = "gen")]
    pub input: Option<String>,
    /// Use a built-in test signal instead of an input file.
    #[arg(long, value_enum, conflicts_with = "input")]
    pub gen: Option<Gen>,
    /// Samples per period for --gen.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Sampling interval for --gen, e.g. `0.01` or `1/512`.
    #[arg(long, default_value = "1/64", value_parser = number)]
    pub ts: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Discrete,
    Analog,
    PeriodicDiscrete,
    PeriodicAnalog,
}

#[derive(Debug, Args)]
pub struct ConvArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    pub left: String,
    pub right: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DftArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct IdftArgs {
    /// Spectrum path, `-` for stdin.
    pub input: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub source: Source,
    /// Harmonic window |n| <= nmax; must satisfy 2·nmax < N.
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FtArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "-2pi", value_parser = number, allow_hyphen_values = true)]
    pub omega_min: f64,
    #[arg(long, default_value = "2pi", value_parser = number, allow_hyphen_values = true)]
    pub omega_max: f64,
    #[arg(long, default_value = "pi/8", value_parser = number)]
    pub omega_step: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value = "1/64", value_parser = number)]
    pub ts: f64,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    /// Multiplier applied to every tolerance.
    #[arg(long, default_value_t = 1.0, value_parser = number)]
    pub tol_scale: f64,
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report path, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
}

fn read(path: &str) -> Result<SignalFile, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {path}: {e}")))?
    };
    SignalFile::parse(&text).map_err(|e| CliError::Parse(format!("{path}: {}", e.message())))
}

fn write(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        io::stdout().lock().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).map_err(|e| CliError::Parse(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn emit(output: &Output, file: SignalFile) -> Result<(), CliError> {
    write(&output.out, &file.render(output.format))
}

impl Gen {
    fn value(self, k: i64, n: usize, ts: f64) -> f64 {
        match self {
            Gen::Pulse => {
                let t = k as f64 * ts;
                if (-0.5..0.5).contains(&t) {
                    1.0
                } else {
                    0.0
                }
            }
            Gen::Cosine => eigenconv::signal::unit_root(k, n).re,
            Gen::Square => {
                if 2 * k.rem_euclid(n as i64) < n as i64 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    /// Aperiodic version: the pulse support, or one period of the others.
    fn sampled(self, n: usize, ts: f64) -> Result<SampledSignal, CliError> {
        let (start, count) = match self {
            Gen::Pulse => {
                let lo = (-0.5 / ts).ceil() as i64;
                let hi = (0.5 / ts).ceil() as i64;
                (lo, (hi - lo).max(1) as usize)
            }
            _ => (0, n),
        };
        let samples = (start..start + count as i64).map(|k| Complex64::from(self.value(k, n, ts))).collect();
        Ok(SampledSignal::new(ts, start, samples)?)
    }

    /// One period of `n` samples; the pulse is centred on `t = 0` and wrapped.
    fn periodic(self, n: usize, ts: f64) -> Result<PeriodicSampledSignal, CliError> {
        if n == 0 {
            return Err(CliError::Parse("--n must be at least 1".into()));
        }
        let half = n as i64 / 2;
        let samples = (0..n as i64)
            .map(|k| {
                let centred = if self == Gen::Pulse && k >= n as i64 - half { k - n as i64 } else { k };
                Complex64::from(self.value(centred, n, ts))
            })
            .collect();
        Ok(PeriodicSampledSignal::new(ts, samples)?)
    }
}

fn check_same<T: PartialEq + std::fmt::Display>(field: &str, left: T, right: T) -> Result<(), CliError> {
    if left == right {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{field} mismatch: left {field}={left}, right {field}={right}")))
    }
}

pub fn conv(args: &ConvArgs) -> Result<(), CliError> {
    let (a, b) = (read(&args.left)?, read(&args.right)?);
    let out = match args.mode {
        Mode::Discrete => SignalFile::from(&discrete_convolve(&a.to_discrete()?, &b.to_discrete()?)),
        Mode::Analog => {
            let (a, b) = (a.to_sampled()?, b.to_sampled()?);
            check_same("ts", a.ts(), b.ts())?;
            SignalFile::from(&approx_analog_convolve(&a, &b)?)
        }
        Mode::PeriodicDiscrete => {
            let (a, b) = (a.to_periodic_discrete()?, b.to_periodic_discrete()?);
            check_same("n", a.period(), b.period())?;
            SignalFile::from(&periodic_convolve_discrete(&a, &b)?)
        }
        Mode::PeriodicAnalog => {
            let (a, b) = (a.to_periodic_sampled()?, b.to_periodic_sampled()?);
            check_same("ts", a.ts(), b.ts())?;
            check_same("n", a.period_samples(), b.period_samples())?;
            SignalFile::from(&periodic_convolve_analog(&a, &b)?)
        }
    };
    emit(&args.output, out)
}

pub fn dft_cmd(args: &DftArgs) -> Result<(), CliError> {
    let s = &args.source;
    let f = match (s.gen, &s.input) {
        (Some(g), _) => g.periodic(s.n, s.ts)?.to_discrete(),
        (None, Some(path)) => read(path)?.to_periodic_discrete()?,
        (None, None) => unreachable!("clap requires input or --gen"),
    };
    emit(&args.output, SignalFile::from(&dft(&f)))
}

pub fn idft_cmd(args: &IdftArgs) -> Result<(), CliError> {
    let spectrum = read(&args.input)?.to_spectrum()?;
    emit(&args.output, SignalFile::from(&idft(&spectrum)))
}

pub fn series(args: &SeriesArgs) -> Result<(), CliError> {
    let s = &args.source;
    let f = match (s.gen, &s.input) {
        (Some(g), _) => g.periodic(s.n, s.ts)?,
        (None, Some(path)) => read(path)?.to_periodic_sampled()?,
        (None, None) => unreachable!("clap requires input or --gen"),
    };
    let spectrum = fourier_coefficients(&f, args.nmax).map_err(|e| {
        CliError::Precondition(format!(
            "{e}; coefficients beyond N/2 alias onto lower harmonics, so use --nmax < {}",
            f.period_samples().div_ceil(2)
        ))
    })?;
    let rows: Vec<(i64, Complex64, Complex64)> = spectrum.iter().map(|(n, c)| (n, c, spectrum.factor(n))).collect();
    let text = match args.output.format {
        Format::Csv => csv_table(
            &[
                ("kind", "series".into()),
                ("period", real(spectrum.period())),
                ("omega0", real(spectrum.omega0())),
                ("n_max", spectrum.n_max().to_string()),
            ],
            &["n", "re", "im", "factor_re", "factor_im"],
            rows.iter().map(|(n, c, f)| vec![n.to_string(), real(c.re), real(c.im), real(f.re), real(f.im)]),
        ),
        Format::Json => json_text(&json!({
            "kind": "series",
            "period": spectrum.period(),
            "omega0": spectrum.omega0(),
            "n_max": spectrum.n_max(),
            "rows": rows.iter().map(|(n, c, f)| json!({
                "n": n, "re": c.re, "im": c.im, "factor_re": f.re, "factor_im": f.im,
            })).collect::<Vec<_>>(),
        })),
    };
    write(&args.output.out, &text)
}

pub fn ft(args: &FtArgs) -> Result<(), CliError> {
    let s = &args.source;
    let f = match (s.gen, &s.input) {
        (Some(g), _) => g.sampled(s.n, s.ts)?,
        (None, Some(path)) => read(path)?.to_sampled()?,
        (None, None) => unreachable!("clap requires input or --gen"),
    };
    let grid = Grid::covering(args.omega_min, args.omega_max, args.omega_step)?;
    let spectrum = fourier_transform(&f, &grid)?;
    let rows: Vec<(f64, Complex64)> = spectrum.omegas().zip(spectrum.values().iter().copied()).collect();
    let text = match args.output.format {
        Format::Csv => csv_table(
            &[("kind", "transform".into()), ("ts", real(f.ts())), ("omega_step", real(grid.step))],
            &["omega", "re", "im"],
            rows.iter().map(|(w, z)| vec![real(*w), real(z.re), real(z.im)]),
        ),
        Format::Json => json_text(&json!({
            "kind": "transform",
            "ts": f.ts(),
            "omega_step": grid.step,
            "rows": rows.iter().map(|(w, z)| json!({"omega": w, "re": z.re, "im": z.im})).collect::<Vec<_>>(),
        })),
    };
    write(&args.output.out, &text)
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("finite values serialize");
    s.push('\n');
    s
}

fn report_csv(report: &Report) -> String {
    let g = &report.grid_params;
    csv_table(
        &[
            ("kind", "report".into()),
            ("seed", report.seed.to_string()),
            ("n", g.n.to_string()),
            ("ts", real(g.ts)),
            ("n_max", g.n_max.to_string()),
            ("tol_scale", real(report.tol_scale)),
        ],
        &["id", "status", "passed", "residual", "scale", "tolerance"],
        report.checks.iter().map(|c| {
            vec![
                c.id.clone(),
                serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                c.passed.to_string(),
                real(c.residual),
                real(c.scale),
                real(c.tolerance),
            ]
        }),
    )
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    if !(args.tol_scale.is_finite() && args.tol_scale > 0.0) {
        return Err(CliError::Parse(format!("--tol-scale must be finite and > 0, got {}", args.tol_scale)));
    }
    let grid = GridParams::new(args.n, args.ts, args.nmax)?;
    let report = harness::run(grid, args.seed, args.tol_scale);
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => report_csv(&report),
    };
    write(&args.out, &text)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Verify(report.failures().map(|c| c.id.clone()).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pulse_support() {
        let p = Gen::Pulse.sampled(0, 0.25).unwrap();
        assert_eq!(p.start(), -2);
        assert_eq!(p.len(), 4);
        let p = Gen::Pulse.sampled(0, 1.0 / 512.0).unwrap();
        assert_eq!((p.start(), p.len()), (-256, 512));
    }

    #[test]
    fn periodic_generators() {
        let sq = Gen::Square.periodic(4, 0.25).unwrap();
        let re: Vec<f64> = sq.samples().iter().map(|z| z.re).collect();
        assert_eq!(re, [1.0, 1.0, -1.0, -1.0]);
        let c = Gen::Cosine.periodic(4, 0.25).unwrap();
        for (z, want) in c.samples().iter().zip([1.0, 0.0, -1.0, 0.0]) {
            assert!((z.re - want).abs() < 1e-15 && z.im == 0.0);
        }
        let p = Gen::Pulse.periodic(8, 0.25).unwrap();
        let re: Vec<f64> = p.samples().iter().map(|z| z.re).collect();
        assert_eq!(re, [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn mismatch_names_field() {
        let e = check_same("ts", 0.1, 0.2).unwrap_err();
        assert!(matches!(&e, CliError::Mismatch(m) if m.contains("left ts=0.1") && m.contains("right ts=0.2")));
    }
}
