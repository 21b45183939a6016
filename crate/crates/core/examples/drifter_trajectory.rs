//! Test a drifter trajectory: positions are differenced into velocities,
//! and the surrogate null distribution is written next to the result.
//!
//! cargo run --release --example drifter_trajectory

use powervar::cli_io::{ingest, null_samples_to_csv, ResultDocument};
use powervar::hypothesis::{run_test, Sidedness, TestConfig};
use powervar::Complex64;

fn main() -> powervar::Result<()> {
    let dir = tempfile_dir()?;
    let n = 600;

    // An inertial oscillation whose radius decays, drifting east.
    let mut rows = String::from("# x,y\n");
    for i in 0..n {
        let t = i as f64;
        let radius = 3.0 * (-t / 300.0).exp();
        let w = Complex64::new(0.02 * t, 0.0) + Complex64::from_polar(radius, 0.25 * t);
        rows.push_str(&format!("{},{}\n", w.re, w.im));
    }
    let path = dir.join("drifter.csv");
    std::fs::write(&path, rows)?;

    let velocity = ingest(&path, true)?;
    for sidedness in [Sidedness::TwoSided, Sidedness::HighTail] {
        let config = TestConfig { bootstraps: 2000, sidedness, seed: 3, fast_path: false, ..TestConfig::default() };
        let result = run_test(&velocity, &config)?;
        if let Some(samples) = &result.null_samples {
            let null_path = dir.join(format!("null_{sidedness}.csv"));
            std::fs::write(&null_path, null_samples_to_csv(samples))?;
            println!("null distribution written to {}", null_path.display());
        }
        let mut doc = ResultDocument::from_result(&result);
        doc.differentiate = true;
        println!("{}", doc.to_json());
    }
    Ok(())
}

fn tempfile_dir() -> std::io::Result<std::path::PathBuf> {
    let dir = std::env::temp_dir().join("powervar-drifter");
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}
