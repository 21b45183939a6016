//! Phase-randomized surrogates.
//!
//! A surrogate keeps the Fourier amplitudes of the observed signal and draws
//! every phase independently and uniformly on `(-pi, pi]`, including the zero
//! frequency. Replicate `b` always uses stream `b` of the caller's seed.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::random::RandomSource;
use crate::spectral::{ComplexSignal, FftPlan};
use crate::stats::{summarize, AmplitudeSpectrum};
use crate::{Error, Result};

#[inline]
fn next_phase<R: Rng>(rng: &mut R) -> f64 {
    // u in [0, 1) maps onto (-pi, pi].
    PI - 2.0 * PI * rng.random::<f64>()
}

/// `n` i.i.d. uniform phases on `(-pi, pi]`.
pub fn draw_phases(n: usize, source: &RandomSource) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot draw zero phases".into()));
    }
    let mut rng = source.rng();
    Ok((0..n).map(|_| next_phase(&mut rng)).collect())
}

/// Reusable state for building many surrogates of one amplitude spectrum.
struct SurrogateKernel<'a> {
    amps: &'a [f64],
    plan: FftPlan,
}

impl<'a> SurrogateKernel<'a> {
    fn new(amps: &'a AmplitudeSpectrum) -> Result<Self> {
        Ok(Self { amps: amps.magnitudes(), plan: FftPlan::new(amps.len())? })
    }

    fn buffers(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let zero = Complex64::new(0.0, 0.0);
        (vec![zero; self.plan.len()], vec![zero; self.plan.scratch_len()])
    }

    /// Writes the time-domain replicate for `source` into `buf`.
    fn fill(&self, source: &RandomSource, buf: &mut [Complex64], scratch: &mut [Complex64]) {
        let mut rng = source.rng();
        for (slot, &a) in buf.iter_mut().zip(self.amps) {
            let (sin, cos) = next_phase(&mut rng).sin_cos();
            *slot = Complex64::new(a * cos, a * sin);
        }
        self.plan.inverse(buf, scratch);
    }
}

/// One replicate: the inverse DFT of `|Z_k| exp(i phi_k)` with fresh phases.
pub fn make_surrogate(amps: &AmplitudeSpectrum, source: &RandomSource) -> Result<ComplexSignal> {
    let kernel = SurrogateKernel::new(amps)?;
    let (mut buf, mut scratch) = kernel.buffers();
    kernel.fill(source, &mut buf, &mut scratch);
    ComplexSignal::new(buf)
}

/// Power variance of replicates `0..count` drawn from `seed`.
///
/// Replicates are evaluated in parallel; entry `b` depends only on
/// `(amps, seed, b)`, so the output is identical for any thread count.
pub fn surrogate_power_variances(amps: &AmplitudeSpectrum, count: usize, seed: u64) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidArgument("number of replicates must be at least 1".into()));
    }
    let kernel = SurrogateKernel::new(amps)?;
    Ok((0..count as u64)
        .into_par_iter()
        .map_init(
            || kernel.buffers(),
            |(buf, scratch), b| {
                kernel.fill(&RandomSource::new(seed, b), buf, scratch);
                summarize(buf).power_variance
            },
        )
        .collect())
}

/// A materialized set of replicates together with the seed that produced them.
#[derive(Debug, Clone)]
pub struct SurrogateBatch {
    pub replicates: Vec<ComplexSignal>,
    /// Stream 0 of this seed produced the first replicate.
    pub source: RandomSource,
}

impl SurrogateBatch {
    pub fn generate(amps: &AmplitudeSpectrum, count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidArgument("number of replicates must be at least 1".into()));
        }
        let replicates = (0..count as u64)
            .into_par_iter()
            .map(|b| make_surrogate(amps, &RandomSource::new(seed, b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { replicates, source: RandomSource::new(seed, 0) })
    }
}
