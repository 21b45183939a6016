//! The bootstrap power-variance test.
//!
//! For an observed signal `z` the test computes `Omega(z)`, the power
//! variance of `B` phase-randomized surrogates, and the tail fractions
//!
//! - `q`: share of surrogates with power variance above `Omega(z)`,
//! - `r`: share below it.
//!
//! Surrogates within a relative `1e-9` of the observed value count as ties.
//! Ties are excluded from the reported `q` and `r` but added to both before
//! the p-value is formed, so a signal whose every surrogate ties (a pure tone)
//! gets `p = 1` instead of a spurious `p = 0`.
//!
//! The two-sided p-value is `min(1, 2 min(q, r))`; the high-tail test uses
//! `q` alone and the low-tail test `r` alone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::spectral::ComplexSignal;
use crate::stats::{expected_null_power_variance, power_summary, AmplitudeSpectrum};
use crate::surrogate::surrogate_power_variances;
use crate::{Error, Result};

/// Relative tolerance under which a surrogate value ties the observed one.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    /// Reject for unusually high or low power variance.
    TwoSided,
    /// Reject for unusually high power variance (heteroscedastic alternatives).
    HighTail,
    /// Reject for unusually low power variance (phase-locked alternatives).
    LowTail,
}

impl Sidedness {
    pub fn as_str(self) -> &'static str {
        match self {
            Sidedness::TwoSided => "two_sided",
            Sidedness::HighTail => "high_tail",
            Sidedness::LowTail => "low_tail",
        }
    }

    pub fn is_one_sided(self) -> bool {
        self != Sidedness::TwoSided
    }
}

impl fmt::Display for Sidedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Sidedness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two_sided" | "two-sided" | "two" | "both" => Ok(Sidedness::TwoSided),
            "high_tail" | "high-tail" | "high" | "q" => Ok(Sidedness::HighTail),
            "low_tail" | "low-tail" | "low" | "r" => Ok(Sidedness::LowTail),
            other => Err(Error::InvalidArgument(format!("unknown sidedness `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestConfig {
    /// Number of bootstrap replicates `B`.
    pub bootstraps: usize,
    pub alpha: f64,
    pub sidedness: Sidedness,
    pub seed: u64,
    /// Subtract the complex sample mean before testing.
    pub demean: bool,
    /// Skip the bootstrap for one-sided tests the analytic mean already decides.
    pub fast_path: bool,
}

impl Default for TestConfig {
    fn default() -> Self {
        Self {
            bootstraps: 1000,
            alpha: 0.05,
            sidedness: Sidedness::TwoSided,
            seed: 0,
            demean: false,
            fast_path: true,
        }
    }
}

impl TestConfig {
    pub fn validate(&self) -> Result<()> {
        if self.bootstraps == 0 {
            return Err(Error::InvalidArgument("number of bootstraps must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub n: usize,
    pub sample_variance: f64,
    pub omega_observed: f64,
    /// Analytic mean of the surrogate power variance.
    pub omega_expected: f64,
    /// Strict upper-tail fraction; `None` when the fast path skipped the bootstrap.
    pub q_value: Option<f64>,
    /// Strict lower-tail fraction; `None` when the fast path skipped the bootstrap.
    pub r_value: Option<f64>,
    pub p_value: f64,
    pub reject: bool,
    pub tie_count: usize,
    pub fast_path_taken: bool,
    pub null_samples: Option<Vec<f64>>,
    pub config: TestConfig,
}

impl TestResult {
    pub fn tie_fraction(&self) -> f64 {
        if self.fast_path_taken {
            0.0
        } else {
            self.tie_count as f64 / self.config.bootstraps as f64
        }
    }
}

/// Outcome of [`fast_path_check`] when the bootstrap can be skipped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarlyAccept {
    pub p_value: f64,
}

/// Decides a one-sided test from the analytic surrogate mean alone.
///
/// A high-tail test cannot reject when the observed power variance sits below
/// the null mean, and a low-tail test cannot reject when it sits above.
/// Two-sided tests never take this path.
pub fn fast_path_check(omega_observed: f64, omega_expected: f64, sidedness: Sidedness) -> Option<EarlyAccept> {
    let fires = match sidedness {
        Sidedness::TwoSided => false,
        Sidedness::HighTail => omega_expected > omega_observed,
        Sidedness::LowTail => omega_expected < omega_observed,
    };
    fires.then_some(EarlyAccept { p_value: 1.0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TailCounts {
    pub above: usize,
    pub below: usize,
    pub ties: usize,
}

pub(crate) fn count_tails(observed: f64, null: &[f64], sample_variance: f64) -> TailCounts {
    let floor = sample_variance * sample_variance;
    let mut counts = TailCounts { above: 0, below: 0, ties: 0 };
    for &value in null {
        let tolerance = TIE_TOLERANCE * observed.max(value).max(floor);
        if (value - observed).abs() <= tolerance {
            counts.ties += 1;
        } else if value > observed {
            counts.above += 1;
        } else {
            counts.below += 1;
        }
    }
    counts
}

fn p_value_from(counts: TailCounts, bootstraps: usize, sidedness: Sidedness) -> f64 {
    let b = bootstraps as f64;
    let q = (counts.above + counts.ties) as f64 / b;
    let r = (counts.below + counts.ties) as f64 / b;
    match sidedness {
        Sidedness::TwoSided => (2.0 * q.min(r)).min(1.0),
        Sidedness::HighTail => q,
        Sidedness::LowTail => r,
    }
}

/// Runs the bootstrap power-variance test on `signal`.
pub fn run_test(signal: &ComplexSignal, config: &TestConfig) -> Result<TestResult> {
    config.validate()?;
    let demeaned;
    let signal = if config.demean {
        demeaned = signal.demeaned();
        &demeaned
    } else {
        signal
    };

    let summary = power_summary(signal);
    let amps = AmplitudeSpectrum::of_signal(signal)?;
    let omega_expected = expected_null_power_variance(&amps);

    if config.fast_path {
        if let Some(early) = fast_path_check(summary.power_variance, omega_expected, config.sidedness) {
            return Ok(TestResult {
                n: signal.len(),
                sample_variance: summary.sample_variance,
                omega_observed: summary.power_variance,
                omega_expected,
                q_value: None,
                r_value: None,
                p_value: early.p_value,
                reject: early.p_value < config.alpha,
                tie_count: 0,
                fast_path_taken: true,
                null_samples: None,
                config: *config,
            });
        }
    }

    let null = surrogate_power_variances(&amps, config.bootstraps, config.seed)?;
    let counts = count_tails(summary.power_variance, &null, summary.sample_variance);
    let b = config.bootstraps as f64;
    let p_value = p_value_from(counts, config.bootstraps, config.sidedness);

    Ok(TestResult {
        n: signal.len(),
        sample_variance: summary.sample_variance,
        omega_observed: summary.power_variance,
        omega_expected,
        q_value: Some(counts.above as f64 / b),
        r_value: Some(counts.below as f64 / b),
        p_value,
        reject: p_value < config.alpha,
        tie_count: counts.ties,
        fast_path_taken: false,
        null_samples: Some(null),
        config: *config,
    })
}
