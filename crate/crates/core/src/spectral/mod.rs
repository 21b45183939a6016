//! Signals, spectra and the exact-length DFT pair.
//!
//! Normalization is asymmetric: the forward transform carries no factor and
//! the inverse carries `1/N`.

mod fft;

pub use fft::{FftPlan, MAX_GENERIC_RADIX};

use num_complex::Complex64;

use crate::stats::AmplitudeSpectrum;
use crate::{Error, Result};

fn check_finite(values: &[Complex64], what: &str) -> Result<()> {
    match values.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
        Some(idx) => Err(Error::InvalidInput(format!("{what} {idx} is not finite"))),
        None => Ok(()),
    }
}

/// A regularly sampled complex-valued signal of length at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal(Vec<Complex64>);

impl ComplexSignal {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Degenerate(format!(
                "signal needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        check_finite(&samples, "sample")?;
        Ok(Self(samples))
    }

    /// Builds a signal from separate real and imaginary parts.
    pub fn from_parts(re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::InvalidArgument(format!(
                "real and imaginary parts differ in length ({} vs {})",
                re.len(),
                im.len()
            )));
        }
        Self::new(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect())
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    /// Multiplies every sample by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        Self::new(self.0.iter().map(|z| z * factor).collect())
    }

    /// Subtracts the complex sample mean.
    pub fn demeaned(&self) -> Self {
        let mean = self.0.iter().sum::<Complex64>() / self.0.len() as f64;
        Self(self.0.iter().map(|z| z - mean).collect())
    }
}

impl TryFrom<Vec<Complex64>> for ComplexSignal {
    type Error = Error;

    fn try_from(samples: Vec<Complex64>) -> Result<Self> {
        Self::new(samples)
    }
}

impl From<ComplexSignal> for Vec<Complex64> {
    fn from(signal: ComplexSignal) -> Self {
        signal.0
    }
}

/// DFT coefficients `|Z_k| exp(i phi_k)`, one per frequency index.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<Complex64>);

impl Spectrum {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Degenerate("spectrum has no coefficients".into()));
        }
        check_finite(&coefficients, "coefficient")?;
        Ok(Self(coefficients))
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn transform(values: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let plan = FftPlan::new(values.len()).expect("validated types are never empty");
    let mut buffer = values.to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); plan.scratch_len()];
    if inverse {
        plan.inverse(&mut buffer, &mut scratch);
    } else {
        plan.forward(&mut buffer, &mut scratch);
    }
    buffer
}

/// `Z_k = sum_n z_n exp(-2 pi i k n / N)`.
pub fn forward_dft(signal: &ComplexSignal) -> Result<Spectrum> {
    Spectrum::new(transform(signal.samples(), false))
}

/// `z_n = (1/N) sum_k C_k exp(2 pi i k n / N)`.
pub fn inverse_dft(spectrum: &Spectrum) -> Result<ComplexSignal> {
    ComplexSignal::new(transform(spectrum.coefficients(), true))
}

/// Moduli of the coefficients.
pub fn amplitudes(spectrum: &Spectrum) -> AmplitudeSpectrum {
    AmplitudeSpectrum::from_validated(spectrum.coefficients().iter().map(|c| c.norm()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(got: &[Complex64], want: &[Complex64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() < 1e-12, "{g} != {w}");
        }
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let s = ComplexSignal::new(vec![c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert_close(forward_dft(&s).unwrap().coefficients(), &[c(1., 0.); 4]);
    }

    #[test]
    fn constant_concentrates_at_zero_frequency() {
        let s = ComplexSignal::new(vec![c(1., 0.); 4]).unwrap();
        let spec = forward_dft(&s).unwrap();
        assert_close(spec.coefficients(), &[c(4., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]);
        let back = inverse_dft(&spec).unwrap();
        assert_close(back.samples(), &[c(1., 0.); 4]);
    }

    #[test]
    fn two_point_pair() {
        let s = ComplexSignal::new(vec![c(1., 0.), c(0., 1.)]).unwrap();
        let spec = forward_dft(&s).unwrap();
        assert_close(spec.coefficients(), &[c(1., 1.), c(1., -1.)]);
        let back = inverse_dft(&Spectrum::new(vec![c(1., 1.), c(1., -1.)]).unwrap()).unwrap();
        assert_close(back.samples(), &[c(1., 0.), c(0., 1.)]);
    }

    #[test]
    fn amplitude_examples() {
        let amps = amplitudes(&Spectrum::new(vec![c(3., 4.), c(0., 0.)]).unwrap());
        assert_eq!(amps.magnitudes(), &[5.0, 0.0]);
        let amps = amplitudes(&Spectrum::new(vec![c(1., 1.), c(1., -1.)]).unwrap());
        for a in amps.magnitudes() {
            assert!((a - 2f64.sqrt()).abs() < 1e-15);
        }
        let amps = amplitudes(&Spectrum::new(vec![c(0., 0.); 5]).unwrap());
        assert!(amps.magnitudes().iter().all(|&a| a == 0.0));
    }

    #[test]
    fn validation() {
        assert!(matches!(ComplexSignal::new(vec![c(1., 0.)]), Err(Error::Degenerate(_))));
        assert!(matches!(
            ComplexSignal::new(vec![c(1., 0.), c(f64::NAN, 0.)]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            Spectrum::new(vec![c(0., f64::INFINITY), c(0., 0.)]),
            Err(Error::InvalidInput(_))
        ));
        assert!(ComplexSignal::from_parts(&[1.0, 2.0], &[0.0]).is_err());
    }

    #[test]
    fn demeaning_removes_the_mean() {
        let s = ComplexSignal::new(vec![c(1., 2.), c(3., 4.), c(5., 0.)]).unwrap();
        let mean: Complex64 = s.demeaned().samples().iter().sum();
        assert!(mean.norm() < 1e-15);
    }
}
