//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use powervar::{Complex64, ComplexSignal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// O(N^2) direct summation of `sum_n z_n exp(-2 pi i k n / N)`.
pub fn naive_dft(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    (0..n)
        .map(|k| {
            let mut re = 0.0;
            let mut im = 0.0;
            for (j, z) in samples.iter().enumerate() {
                let angle = -2.0 * PI * ((j * k) % n) as f64 / n as f64;
                let (s, c) = angle.sin_cos();
                re += z.re * c - z.im * s;
                im += z.re * s + z.im * c;
            }
            Complex64::new(re, im)
        })
        .collect()
}

/// `(sigma^2, Omega)` evaluated literally from their defining sums.
pub fn direct_power_stats(samples: &[Complex64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let powers: Vec<f64> = samples.iter().map(|z| z.re * z.re + z.im * z.im).collect();
    let mut mean = 0.0;
    for p in &powers {
        mean += p;
    }
    mean /= n;
    let mut omega = 0.0;
    for p in &powers {
        omega += (p - mean).powi(2);
    }
    (mean, omega / n)
}

/// `((sum a^2)^2 - sum a^4) / N^4` exactly as written.
pub fn literal_expectation(amps: &[f64]) -> f64 {
    let n = amps.len() as f64;
    let s2: f64 = amps.iter().map(|a| a * a).sum();
    let s4: f64 = amps.iter().map(|a| a.powi(4)).sum();
    (s2 * s2 - s4) / n.powi(4)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_samples(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> ComplexSignal {
    ComplexSignal::new(random_samples(rng, n)).unwrap()
}

pub fn max_abs(values: &[Complex64]) -> f64 {
    values.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Largest deviation relative to the largest reference magnitude.
pub fn relative_error(got: &[Complex64], want: &[Complex64]) -> f64 {
    let scale = max_abs(want).max(f64::MIN_POSITIVE);
    got.iter().zip(want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale
}

pub fn pure_tone(n: usize, k: usize) -> ComplexSignal {
    ComplexSignal::new(
        (0..n)
            .map(|i| Complex64::from_polar(1.0, 2.0 * PI * ((k * i) % n) as f64 / n as f64))
            .collect(),
    )
    .unwrap()
}
