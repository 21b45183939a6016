mod common;

use common::{direct_power_stats, literal_expectation, random_signal, rng};
use powervar::random::RandomSource;
use powervar::stats::{expected_null_power_variance, power_summary, AmplitudeSpectrum};
use powervar::surrogate::{make_surrogate, surrogate_power_variances};
use powervar::{Complex64, ComplexSignal};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn summary_matches_literal_sums() {
    let mut r = rng(10);
    for _ in 0..1000 {
        let n = r.random_range(2..=256);
        let signal = random_signal(&mut r, n);
        let (var, omega) = direct_power_stats(signal.samples());
        let summary = power_summary(&signal);
        assert!((summary.sample_variance - var).abs() <= 1e-10 * var);
        assert!((summary.power_variance - omega).abs() <= 1e-10 * omega);
    }
}

#[test]
fn equal_powers_give_zero_power_variance() {
    let mut r = rng(11);
    for n in [2, 17, 256] {
        let radius = r.random_range(0.5..5.0);
        let signal = ComplexSignal::new(
            (0..n).map(|_| Complex64::from_polar(radius, r.random_range(-3.0..3.0))).collect(),
        )
        .unwrap();
        let summary = power_summary(&signal);
        let bound = 1e-12 * summary.sample_variance.powi(2) * n as f64;
        assert!(summary.power_variance <= bound, "{} > {bound}", summary.power_variance);
    }
}

#[test]
fn expectation_matches_literal_formula() {
    let mut r = rng(12);
    for _ in 0..200 {
        let n = r.random_range(1..100);
        let amps: Vec<f64> = (0..n).map(|_| r.random_range(0.0..10.0)).collect();
        let want = literal_expectation(&amps);
        let got = expected_null_power_variance(&AmplitudeSpectrum::new(amps).unwrap());
        assert!((got - want).abs() <= 1e-12 * want.max(1e-300), "{got} vs {want}");
    }
}

/// Mean power variance over many surrogates against the closed form, within
/// three Monte Carlo standard errors.
fn surrogate_mean_check(amps: &AmplitudeSpectrum, draws: usize, seed: u64) {
    let values = surrogate_power_variances(amps, draws, seed).unwrap();
    let mean = values.iter().sum::<f64>() / draws as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    let se = (var / draws as f64).sqrt();
    let expected = expected_null_power_variance(amps);
    assert!((mean - expected).abs() <= 3.0 * se, "mean {mean} vs {expected} (se {se})");
}

#[test]
fn expectation_is_the_surrogate_mean() {
    let mut r = rng(13);
    let amps = AmplitudeSpectrum::new((0..16).map(|_| r.random_range(0.0..3.0)).collect()).unwrap();
    surrogate_mean_check(&amps, 100_000, 1);

    // Through the whole pipeline from a signal, at B = 10,000.
    let signal = random_signal(&mut r, 40);
    surrogate_mean_check(&AmplitudeSpectrum::of_signal(&signal).unwrap(), 10_000, 2);
}

#[test]
fn single_replicate_keeps_average_power() {
    let mut r = rng(14);
    let signal = random_signal(&mut r, 64);
    let amps = AmplitudeSpectrum::of_signal(&signal).unwrap();
    let var = power_summary(&signal).sample_variance;
    for b in 0..20 {
        let s = make_surrogate(&amps, &RandomSource::new(3, b)).unwrap();
        assert!((power_summary(&s).sample_variance - var).abs() <= 1e-9 * var);
    }
}

proptest! {
    #[test]
    fn scale_equivariance(
        samples in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..100),
        c in (-4.0f64..4.0, -4.0f64..4.0).prop_filter("nonzero", |(a, b)| a.abs() + b.abs() > 0.1),
    ) {
        let signal = ComplexSignal::new(samples.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap();
        let c = Complex64::new(c.0, c.1);
        let base = power_summary(&signal);
        let scaled = power_summary(&signal.scaled(c).unwrap());
        let m2 = c.norm_sqr();
        prop_assert!((scaled.sample_variance - m2 * base.sample_variance).abs() <= 1e-10 * m2 * base.sample_variance);
        prop_assert!((scaled.power_variance - m2 * m2 * base.power_variance).abs() <= 1e-10 * m2 * m2 * base.power_variance + 1e-300);
    }

    #[test]
    fn expectation_is_permutation_invariant_and_bounded(
        amps in prop::collection::vec(0.0f64..10.0, 1..64),
        rotation in 0usize..64,
    ) {
        let n = amps.len() as f64;
        let base = expected_null_power_variance(&AmplitudeSpectrum::new(amps.clone()).unwrap());
        let mut shuffled = amps.clone();
        shuffled.reverse();
        let k = rotation % shuffled.len();
        shuffled.rotate_left(k);
        let permuted = expected_null_power_variance(&AmplitudeSpectrum::new(shuffled).unwrap());
        prop_assert!((base - permuted).abs() <= 1e-12 * base.max(1e-300));

        let sigma2 = amps.iter().map(|a| a * a).sum::<f64>() / (n * n);
        prop_assert!(base >= 0.0);
        prop_assert!(base <= sigma2 * sigma2 * (1.0 + 1e-12));
    }
}
