//! Signal files, result documents and the `powervar` command line.
//!
//! Signal files are plain text with one `re,im` pair per line and an
//! optional first line starting with `#`. A file may hold the signal itself
//! or positions, in which case the signal is the first difference
//! `z_n = w_{n+1} - w_n` (a velocity from a trajectory).

mod commands;

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hypothesis::{Sidedness, TestResult};
use crate::spectral::ComplexSignal;
use crate::{Error, Result};

pub use commands::{run, Cli, Command, EXIT_INPUT_ERROR, EXIT_OK, EXIT_USAGE_ERROR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalFormat {
    /// Rows are the samples.
    CsvComplex,
    /// Rows are positions; the signal is their first difference.
    CsvPosition,
}

impl SignalFormat {
    pub fn from_differentiate(differentiate: bool) -> Self {
        if differentiate {
            SignalFormat::CsvPosition
        } else {
            SignalFormat::CsvComplex
        }
    }

    fn min_rows(self) -> usize {
        match self {
            SignalFormat::CsvComplex => 2,
            SignalFormat::CsvPosition => 3,
        }
    }
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<f64> {
    let text = field
        .map(str::trim)
        .ok_or_else(|| Error::Parse { line, message: format!("missing {what} column") })?;
    let value: f64 = text
        .parse()
        .map_err(|_| Error::Parse { line, message: format!("cannot parse {what} value `{text}`") })?;
    if !value.is_finite() {
        return Err(Error::Parse { line, message: format!("{what} value `{text}` is not finite") });
    }
    Ok(value)
}

/// Parses `re,im` rows. Line numbers in errors are 1-based.
pub fn parse_rows(text: &str) -> Result<Vec<Complex64>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || (idx == 0 && trimmed.starts_with('#')) {
            continue;
        }
        let mut fields = trimmed.split(',');
        let re = parse_field(fields.next(), line, "real")?;
        let im = parse_field(fields.next(), line, "imaginary")?;
        if fields.next().is_some() {
            return Err(Error::Parse { line, message: "expected exactly two columns".into() });
        }
        rows.push(Complex64::new(re, im));
    }
    Ok(rows)
}

/// First differences `w_{n+1} - w_n`.
pub fn differentiate(positions: &[Complex64]) -> Vec<Complex64> {
    positions.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Builds a signal from file contents.
pub fn ingest_str(text: &str, format: SignalFormat) -> Result<ComplexSignal> {
    let rows = parse_rows(text)?;
    if rows.len() < format.min_rows() {
        return Err(Error::Degenerate(format!(
            "need at least {} rows, found {}",
            format.min_rows(),
            rows.len()
        )));
    }
    match format {
        SignalFormat::CsvComplex => ComplexSignal::new(rows),
        SignalFormat::CsvPosition => ComplexSignal::new(differentiate(&rows)),
    }
}

pub fn ingest(path: impl AsRef<Path>, differentiate: bool) -> Result<ComplexSignal> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    ingest_str(&text, SignalFormat::from_differentiate(differentiate))
}

/// Shortest round-trip rendering, switching to exponent form for very large
/// or very small magnitudes.
pub fn format_float(value: f64) -> String {
    let magnitude = value.abs();
    if value == 0.0 || (1e-4..1e16).contains(&magnitude) {
        format!("{value}")
    } else {
        format!("{value:e}")
    }
}

/// Renders a signal as a `csv_complex` file.
pub fn signal_to_csv(signal: &ComplexSignal) -> String {
    let mut out = String::from("# re,im\n");
    for z in signal.samples() {
        let _ = writeln!(out, "{},{}", format_float(z.re), format_float(z.im));
    }
    out
}

/// Surrogate power variances, one per replicate.
pub fn null_samples_to_csv(samples: &[f64]) -> String {
    let mut out = String::from("replicate,omega\n");
    for (b, v) in samples.iter().enumerate() {
        let _ = writeln!(out, "{b},{}", format_float(*v));
    }
    out
}

/// The JSON document printed by `powervar test`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub n: usize,
    pub omega_observed: f64,
    pub omega_expected: f64,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub p: f64,
    pub reject: bool,
    pub tie_count: usize,
    #[serde(rename = "B")]
    pub bootstraps: usize,
    pub alpha: f64,
    pub sided: Sidedness,
    pub seed: u64,
    pub demean: bool,
    pub sample_variance: f64,
    pub fast_path: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default)]
    pub differentiate: bool,
    /// Seconds since the Unix epoch; only present when requested so that
    /// repeated runs stay byte-identical by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl ResultDocument {
    pub fn from_result(result: &TestResult) -> Self {
        Self {
            n: result.n,
            omega_observed: result.omega_observed,
            omega_expected: result.omega_expected,
            q: result.q_value,
            r: result.r_value,
            p: result.p_value,
            reject: result.reject,
            tie_count: result.tie_count,
            bootstraps: result.config.bootstraps,
            alpha: result.config.alpha,
            sided: result.config.sidedness,
            seed: result.config.seed,
            demean: result.config.demean,
            sample_variance: result.sample_variance,
            fast_path: result.fast_path_taken,
            file: None,
            differentiate: false,
            timestamp: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }
}
