//! Power-variance statistics and the analytic expectation of the surrogate null.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spectral::{amplitudes, forward_dft, ComplexSignal};
use crate::{Error, Result};

/// Fourier magnitudes `|Z_k|`: nonnegative and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSpectrum(Vec<f64>);

impl AmplitudeSpectrum {
    pub fn new(magnitudes: Vec<f64>) -> Result<Self> {
        if magnitudes.is_empty() {
            return Err(Error::Degenerate("amplitude spectrum is empty".into()));
        }
        if let Some(idx) = magnitudes.iter().position(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::InvalidInput(format!(
                "amplitude {idx} is {} (must be finite and nonnegative)",
                magnitudes[idx]
            )));
        }
        Ok(Self(magnitudes))
    }

    pub(crate) fn from_validated(magnitudes: Vec<f64>) -> Self {
        debug_assert!(magnitudes.iter().all(|a| a.is_finite() && *a >= 0.0));
        Self(magnitudes)
    }

    /// Amplitudes of the forward DFT of `signal`.
    pub fn of_signal(signal: &ComplexSignal) -> Result<Self> {
        Ok(amplitudes(&forward_dft(signal)?))
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Average power and power variance of a signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSummary {
    /// `(1/N) sum |z_n|^2`
    pub sample_variance: f64,
    /// `(1/N) sum (|z_n|^2 - sample_variance)^2`
    pub power_variance: f64,
}

/// Two-pass evaluation over raw samples: the mean power first, then centered squares.
pub(crate) fn summarize(samples: &[Complex64]) -> PowerSummary {
    let n = samples.len() as f64;
    let sample_variance = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / n;
    let power_variance = samples
        .iter()
        .map(|z| {
            let d = z.norm_sqr() - sample_variance;
            d * d
        })
        .sum::<f64>()
        / n;
    PowerSummary { sample_variance, power_variance }
}

pub fn power_summary(signal: &ComplexSignal) -> PowerSummary {
    summarize(signal.samples())
}

/// Mean power variance of phase-randomized surrogates with amplitudes `amps`:
/// `((sum |Z_k|^2)^2 - sum |Z_k|^4) / N^4`.
///
/// The bracket equals `2 sum_{l<k} |Z_k|^2 |Z_l|^2`, which is accumulated
/// directly so the result is never negative and a single dominant amplitude
/// does not cancel against itself.
pub fn expected_null_power_variance(amps: &AmplitudeSpectrum) -> f64 {
    let n = amps.len() as f64;
    let mut prefix = 0.0;
    let mut cross = 0.0;
    for a in amps.magnitudes() {
        let power = a * a;
        cross += power * prefix;
        prefix += power;
    }
    2.0 * cross / (n * n * n * n)
}
