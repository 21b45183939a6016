//! Forward and inverse DFT of a short chirp, plus a Parseval check.
//!
//! cargo run --example spectral_roundtrip

use powervar::spectral::{amplitudes, forward_dft, inverse_dft, FftPlan};
use powervar::{Complex64, ComplexSignal};

fn main() -> powervar::Result<()> {
    // 97 is prime, so this length goes through the Bluestein path.
    for n in [16usize, 97, 1000] {
        let samples = (0..n)
            .map(|i| {
                let t = i as f64 / n as f64;
                Complex64::from_polar(1.0 + t, 40.0 * t * t)
            })
            .collect();
        let signal = ComplexSignal::new(samples)?;
        let spectrum = forward_dft(&signal)?;
        let back = inverse_dft(&spectrum)?;

        let err = signal
            .samples()
            .iter()
            .zip(back.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let energy: f64 = signal.samples().iter().map(|z| z.norm_sqr()).sum();
        let spectral: f64 = amplitudes(&spectrum).magnitudes().iter().map(|a| a * a).sum::<f64>() / n as f64;
        let plan = FftPlan::new(n)?;

        println!(
            "N={n:5} bluestein={:5} round-trip max error {err:.2e}  energy {energy:.6} vs {spectral:.6}",
            plan.is_bluestein()
        );
    }
    Ok(())
}
