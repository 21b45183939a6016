mod common;

use common::{pure_tone, random_signal, rng};
use powervar::generators::{generate, Process, ProcessKind, ProcessSpec};
use powervar::hypothesis::{run_test, Sidedness, TestConfig};
use powervar::Complex64;
use rand::Rng;

/// A jump of 20 noise standard deviations. Raising the levels instead (1 to 21
/// at unit noise) does not work: the signal becomes a near-deterministic step
/// whose own surrogates spread just as widely, and p settles near 0.13.
#[test]
fn large_jump_is_always_detected() {
    let mut rejected = 0;
    for seed in 0..100 {
        let spec = ProcessSpec {
            process: Process::Jump { low_level: 1.0, high_level: 3.0, noise_scale: 0.1 },
            n: 1000,
            seed,
        };
        let config = TestConfig { bootstraps: 1000, sidedness: Sidedness::HighTail, seed, ..TestConfig::default() };
        let result = run_test(&generate(&spec).unwrap(), &config).unwrap();
        if result.reject {
            rejected += 1;
        }
    }
    assert!(rejected >= 99, "only {rejected}/100 rejected");
}

#[test]
fn pure_tone_is_never_rejected() {
    for b in [1, 10, 500] {
        for sidedness in [Sidedness::TwoSided, Sidedness::HighTail, Sidedness::LowTail] {
            let config = TestConfig { bootstraps: b, sidedness, fast_path: false, ..TestConfig::default() };
            let result = run_test(&pure_tone(64, 3), &config).unwrap();
            assert_eq!(result.tie_count, b);
            assert_eq!(result.p_value, 1.0);
            assert!(!result.reject);
        }
    }
}

#[test]
fn p_values_are_scale_invariant() {
    let mut r = rng(30);
    for kind in ProcessKind::ALL {
        let signal = generate(&ProcessSpec::new(kind, 200, 5)).unwrap();
        let config = TestConfig { bootstraps: 300, seed: 8, fast_path: false, ..TestConfig::default() };
        let base = run_test(&signal, &config).unwrap();
        for _ in 0..3 {
            let c = Complex64::from_polar(r.random_range(0.01..100.0), r.random_range(-3.0..3.0));
            let scaled = run_test(&signal.scaled(c).unwrap(), &config).unwrap();
            assert_eq!(base.q_value, scaled.q_value);
            assert_eq!(base.r_value, scaled.r_value);
            assert_eq!(base.p_value, scaled.p_value);
        }
    }
}

#[test]
fn demeaning_changes_the_jump_statistic() {
    let signal = generate(&ProcessSpec::jump(500, 2)).unwrap();
    let raw = run_test(&signal, &TestConfig { bootstraps: 50, ..TestConfig::default() }).unwrap();
    let centered = run_test(&signal, &TestConfig { bootstraps: 50, demean: true, ..TestConfig::default() }).unwrap();
    assert!(centered.sample_variance < raw.sample_variance);
    assert_ne!(raw.omega_observed, centered.omega_observed);
}

#[test]
fn results_are_bounded_and_reproducible() {
    let mut r = rng(31);
    for i in 0..30 {
        let n = r.random_range(2..200);
        let signal = random_signal(&mut r, n);
        let sidedness = [Sidedness::TwoSided, Sidedness::HighTail, Sidedness::LowTail][i % 3];
        let config = TestConfig { bootstraps: 40, sidedness, seed: i as u64, ..TestConfig::default() };
        let result = run_test(&signal, &config).unwrap();
        assert!((0.0..=1.0).contains(&result.p_value));
        if let (Some(q), Some(r)) = (result.q_value, result.r_value) {
            assert!((0.0..=1.0).contains(&q) && (0.0..=1.0).contains(&r));
            assert!((q + r + result.tie_fraction() - 1.0).abs() < 1e-12);
        }
        assert!(result.omega_expected >= 0.0);
        assert_eq!(result, run_test(&signal, &config).unwrap());
    }
}

#[test]
fn fast_path_reports_without_bootstrap() {
    // Exactly one of the two tails can take the fast path for a given signal.
    let signal = generate(&ProcessSpec::cyclo(300, 4)).unwrap();
    let mut fired = 0;
    for sidedness in [Sidedness::HighTail, Sidedness::LowTail] {
        let on = run_test(&signal, &TestConfig { bootstraps: 100, sidedness, ..TestConfig::default() }).unwrap();
        if on.fast_path_taken {
            fired += 1;
            assert_eq!(on.p_value, 1.0);
            assert!(!on.reject);
            assert!(on.null_samples.is_none() && on.q_value.is_none());
            let off = run_test(&signal, &TestConfig { bootstraps: 100, sidedness, fast_path: false, ..TestConfig::default() }).unwrap();
            assert!(!off.reject);
        }
    }
    assert_eq!(fired, 1);
    let two = run_test(&signal, &TestConfig { bootstraps: 100, ..TestConfig::default() }).unwrap();
    assert!(!two.fast_path_taken);
}
