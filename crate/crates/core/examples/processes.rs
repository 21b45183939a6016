//! Generate each synthetic process and write it as a signal file.
//!
//! cargo run --example processes -- [output dir]

use std::path::PathBuf;

use powervar::cli_io::{ingest, signal_to_csv};
use powervar::generators::{generate, Process, ProcessKind, ProcessSpec};

fn main() -> powervar::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let mut specs: Vec<ProcessSpec> = ProcessKind::ALL.iter().map(|&k| ProcessSpec::new(k, 500, 1)).collect();
    specs.push(ProcessSpec {
        process: Process::Jump { low_level: 0.0, high_level: 5.0, noise_scale: 0.5 },
        n: 500,
        seed: 1,
    });

    for (i, spec) in specs.iter().enumerate() {
        let signal = generate(spec)?;
        let path = dir.join(format!("{}_{i}.csv", spec.kind()));
        std::fs::write(&path, signal_to_csv(&signal))?;
        let back = ingest(&path, false)?;
        let mean = back.samples().iter().sum::<powervar::Complex64>() / back.len() as f64;
        println!("{} -> {} ({} samples, mean {:.3})", spec.kind(), path.display(), back.len(), mean);
    }
    Ok(())
}
