//! Single-file signal storage.
//!
//! CSV files carry a leading metadata comment and a mandatory header:
//!
//! ```text
//! # kind=periodic-sampled ts=1.5625000000000000e-2 n=64
//! index,re,im
//! 0,1.0000000000000000e0,0.0000000000000000e0
//! ```
//!
//! JSON files mirror the same fields. Values are written with 17 significant
//! digits so a write/read cycle is exact.

use std::fmt;
use std::str::FromStr;

use eigenconv::{
    Complex64, DftSpectrum, DiscreteSignal, PeriodicDiscreteSignal, PeriodicSampledSignal, SampledSignal,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Discrete,
    Sampled,
    PeriodicDiscrete,
    PeriodicSampled,
    Dft,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Discrete => "discrete",
            Kind::Sampled => "sampled",
            Kind::PeriodicDiscrete => "periodic-discrete",
            Kind::PeriodicSampled => "periodic-sampled",
            Kind::Dft => "dft",
        }
    }

    fn periodic(self) -> bool {
        matches!(self, Kind::PeriodicDiscrete | Kind::PeriodicSampled | Kind::Dft)
    }

    fn has_step(self) -> bool {
        matches!(self, Kind::Sampled | Kind::PeriodicSampled)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        [Kind::Discrete, Kind::Sampled, Kind::PeriodicDiscrete, Kind::PeriodicSampled, Kind::Dft]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CliError::Parse(format!("unknown signal kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Row {
    index: i64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDoc {
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ts: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    rows: Vec<Row>,
}

/// A validated signal as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalFile {
    kind: Kind,
    ts: Option<f64>,
    start: i64,
    samples: Vec<Complex64>,
}

impl SignalFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_csv(text)
        }
    }

    fn parse_json(text: &str) -> Result<Self, CliError> {
        let doc: JsonDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON signal: {e}")))?;
        Self::validate(doc.kind, doc.ts, doc.n, &doc.rows)
    }

    fn parse_csv(text: &str) -> Result<Self, CliError> {
        let (meta, body) = match text.split_once('\n') {
            Some((first, rest)) if first.trim_start().starts_with('#') => (first, rest),
            _ => return Err(CliError::Parse("missing `# kind=...` metadata line".into())),
        };
        let (mut kind, mut ts, mut n) = (None, None, None);
        for pair in meta.trim_start().trim_start_matches('#').split_whitespace() {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("metadata entry `{pair}` is not key=value")))?;
            match key {
                "kind" => kind = Some(value.parse::<Kind>()?),
                "ts" => ts = Some(parse_real(value)?),
                "n" => {
                    n = Some(value.parse::<usize>().map_err(|_| CliError::Parse(format!("invalid n=`{value}`")))?)
                }
                other => return Err(CliError::Parse(format!("unknown metadata key `{other}`"))),
            }
        }
        let kind = kind.ok_or_else(|| CliError::Parse("metadata line lacks kind=".into()))?;

        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(body.as_bytes());
        let header = reader.headers().map_err(|e| CliError::Parse(format!("unreadable CSV header: {e}")))?;
        if header.iter().collect::<Vec<_>>() != ["index", "re", "im"] {
            return Err(CliError::Parse("CSV header must be `index,re,im`".into()));
        }
        let rows = reader
            .deserialize::<Row>()
            .enumerate()
            .map(|(i, r)| r.map_err(|e| CliError::Parse(format!("row {}: {e}", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(kind, ts, n, &rows)
    }

    fn validate(kind: Kind, ts: Option<f64>, n: Option<usize>, rows: &[Row]) -> Result<Self, CliError> {
        if let Some(bad) = rows.iter().find(|r| !r.re.is_finite() || !r.im.is_finite()) {
            return Err(CliError::Parse(format!("non-finite value at index {}", bad.index)));
        }
        if rows.windows(2).any(|w| w[1].index <= w[0].index) {
            return Err(CliError::Parse("indices must be strictly increasing".into()));
        }
        match (kind.has_step(), ts) {
            (true, None) => return Err(CliError::Parse(format!("kind={kind} requires ts="))),
            (true, Some(t)) if !(t.is_finite() && t > 0.0) => {
                return Err(CliError::Parse(format!("ts must be finite and > 0, got {t}")))
            }
            (false, Some(_)) => return Err(CliError::Parse(format!("kind={kind} takes no ts="))),
            _ => {}
        }
        let value = |r: &Row| Complex64::new(r.re, r.im);

        if kind.periodic() {
            let n = n.ok_or_else(|| CliError::Parse(format!("kind={kind} requires n=")))?;
            if n != rows.len() {
                return Err(CliError::Parse(format!("header n={n} but {} rows", rows.len())));
            }
            if n == 0 {
                return Err(CliError::Parse("a period needs at least one row".into()));
            }
            if rows.iter().enumerate().any(|(i, r)| r.index != i as i64) {
                return Err(CliError::Parse(format!("periodic rows must be indexed exactly 0..{}", n - 1)));
            }
            return Ok(Self { kind, ts, start: 0, samples: rows.iter().map(value).collect() });
        }
        if n.is_some() {
            return Err(CliError::Parse(format!("kind={kind} takes no n=")));
        }
        let Some(first) = rows.first() else {
            return Ok(Self { kind, ts, start: 0, samples: Vec::new() });
        };
        let span = rows[rows.len() - 1].index - first.index + 1;
        let mut samples = vec![Complex64::new(0.0, 0.0); span as usize];
        for r in rows {
            samples[(r.index - first.index) as usize] = value(r);
        }
        Ok(Self { kind, ts, start: first.index, samples })
    }

    fn rows(&self) -> impl Iterator<Item = Row> + '_ {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, z)| Row { index: self.start + i as i64, re: z.re, im: z.im })
    }

    fn period(&self) -> Option<usize> {
        self.kind.periodic().then_some(self.samples.len())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = JsonDoc { kind: self.kind, ts: self.ts, n: self.period(), rows: self.rows().collect() };
                let mut s = serde_json::to_string_pretty(&doc).expect("finite rows serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut meta = vec![("kind", self.kind.to_string())];
                if let Some(ts) = self.ts {
                    meta.push(("ts", real(ts)));
                }
                if let Some(n) = self.period() {
                    meta.push(("n", n.to_string()));
                }
                let rows = self.rows().map(|r| vec![r.index.to_string(), real(r.re), real(r.im)]);
                csv_table(&meta, &["index", "re", "im"], rows)
            }
        }
    }

    fn expect(&self, kind: Kind) -> Result<(), CliError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(CliError::Parse(format!("expected a {kind} signal, got kind={}", self.kind)))
        }
    }

    pub fn to_discrete(&self) -> Result<DiscreteSignal, CliError> {
        self.expect(Kind::Discrete)?;
        Ok(DiscreteSignal::new(self.start, self.samples.clone())?)
    }

    pub fn to_sampled(&self) -> Result<SampledSignal, CliError> {
        self.expect(Kind::Sampled)?;
        Ok(SampledSignal::new(self.ts.unwrap_or_default(), self.start, self.samples.clone())?)
    }

    pub fn to_periodic_discrete(&self) -> Result<PeriodicDiscreteSignal, CliError> {
        self.expect(Kind::PeriodicDiscrete)?;
        Ok(PeriodicDiscreteSignal::new(self.samples.clone())?)
    }

    pub fn to_periodic_sampled(&self) -> Result<PeriodicSampledSignal, CliError> {
        self.expect(Kind::PeriodicSampled)?;
        Ok(PeriodicSampledSignal::new(self.ts.unwrap_or_default(), self.samples.clone())?)
    }

    pub fn to_spectrum(&self) -> Result<DftSpectrum, CliError> {
        self.expect(Kind::Dft)?;
        Ok(DftSpectrum::new(self.samples.clone())?)
    }
}

impl From<&DiscreteSignal> for SignalFile {
    fn from(s: &DiscreteSignal) -> Self {
        Self { kind: Kind::Discrete, ts: None, start: s.start(), samples: s.samples().to_vec() }
    }
}

impl From<&SampledSignal> for SignalFile {
    fn from(s: &SampledSignal) -> Self {
        Self { kind: Kind::Sampled, ts: Some(s.ts()), start: s.start(), samples: s.samples().to_vec() }
    }
}

impl From<&PeriodicDiscreteSignal> for SignalFile {
    fn from(s: &PeriodicDiscreteSignal) -> Self {
        Self { kind: Kind::PeriodicDiscrete, ts: None, start: 0, samples: s.samples().to_vec() }
    }
}

impl From<&PeriodicSampledSignal> for SignalFile {
    fn from(s: &PeriodicSampledSignal) -> Self {
        Self { kind: Kind::PeriodicSampled, ts: Some(s.ts()), start: 0, samples: s.samples().to_vec() }
    }
}

impl From<&DftSpectrum> for SignalFile {
    fn from(s: &DftSpectrum) -> Self {
        Self { kind: Kind::Dft, ts: None, start: 0, samples: s.values().to_vec() }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Metadata comment, header, then rows.
pub fn csv_table<I>(meta: &[(&str, String)], header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut out = String::from("#");
    for (k, v) in meta {
        out.push_str(&format!(" {k}={v}"));
    }
    out.push('\n');
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output"));
    out
}

/// A real number: decimal, `a/b`, or a multiple of `pi` such as `-pi`, `3pi/4`, `0.5*pi`.
pub fn parse_real(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::Parse(format!("invalid number `{s}`"));
    let t = s.trim();
    let (coeff, rest, scale) = match t.find("pi") {
        Some(i) => {
            let c = t[..i].trim_end_matches('*');
            let c = match c {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            (c, &t[i + 2..], std::f64::consts::PI)
        }
        None => match t.split_once('/') {
            Some((num, _)) => (num.parse::<f64>().map_err(|_| bad())?, &t[num.len()..], 1.0),
            None => (t.parse::<f64>().map_err(|_| bad())?, "", 1.0),
        },
    };
    let divisor = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').and_then(|d| d.parse::<f64>().ok()).ok_or_else(bad)?,
    };
    let x = coeff * scale / divisor;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad())
    }
}
