//! A small rejection-rate table over processes and lengths.
//!
//! cargo run --release --example monte_carlo

use powervar::montecarlo::{run_table, TableConfig};

fn main() -> powervar::Result<()> {
    let config = TableConfig {
        lengths: vec![20, 100, 500],
        bootstraps: 200,
        ..TableConfig::desk_scale(2024).with_trials(100)
    };
    let report = run_table(&config)?;
    print!("{}", report.percentage_table());
    println!();
    for cell in &report.cells {
        println!(
            "{:>5} N={:<4} rate {:.2} ± {:.2}  mean p {:.3}",
            cell.config.kind,
            cell.config.n,
            cell.rejection_rate,
            cell.standard_error(),
            cell.mean_p
        );
    }
    Ok(())
}
