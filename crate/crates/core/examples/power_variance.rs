//! Power variance of a few signals next to its expected value under the
//! phase-randomized null.
//!
//! cargo run --example power_variance

use powervar::generators::{generate, ProcessKind, ProcessSpec};
use powervar::stats::{expected_null_power_variance, power_summary, AmplitudeSpectrum};
use powervar::{Complex64, ComplexSignal};

fn main() -> powervar::Result<()> {
    let n = 1000;
    let tone = ComplexSignal::new((0..n).map(|i| Complex64::from_polar(2.0, 0.3 * i as f64)).collect())?;

    println!("{:>8} {:>12} {:>12} {:>12}", "signal", "variance", "omega", "E[omega]");
    let mut rows = vec![("tone".to_string(), tone)];
    for kind in ProcessKind::ALL {
        rows.push((kind.to_string(), generate(&ProcessSpec::new(kind, n, 3))?));
    }
    for (name, signal) in &rows {
        let summary = power_summary(signal);
        let expected = expected_null_power_variance(&AmplitudeSpectrum::of_signal(signal)?);
        println!(
            "{name:>8} {:>12.5} {:>12.5} {:>12.5}",
            summary.sample_variance, summary.power_variance, expected
        );
    }
    Ok(())
}
