//! Rejection-rate experiments over synthetic processes.
//!
//! A cell runs `trials` independent realizations of one process at one
//! length and records the fraction rejected at `alpha`. Trial `t` of a cell
//! with master seed `m` generates its signal from
//! `derive_seed(m, t, domain::GENERATE)` and bootstraps it with
//! `derive_seed(m, t, domain::TEST)`. Inside a table, the cell master seed is
//! itself derived from the table seed, the process and the length.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::generators::{generate, ProcessKind, ProcessSpec};
use crate::hypothesis::{run_test, Sidedness, TestConfig};
use crate::random::{derive_seed, domain};
use crate::{Error, Result};

/// Signal lengths of the reference rejection table.
pub const LENGTH_GRID: [usize; 7] = [10, 20, 50, 100, 200, 500, 1000];

pub const REPORT_HEADER: &str = "process,n,trials,B,sided,reject_rate,mean_p";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellConfig {
    pub kind: ProcessKind,
    pub n: usize,
    pub trials: usize,
    pub bootstraps: usize,
    pub sidedness: Sidedness,
    pub master_seed: u64,
    pub alpha: f64,
    pub fast_path: bool,
}

impl CellConfig {
    /// A cell tested on the process's reference tail at `alpha = 0.05`.
    pub fn new(kind: ProcessKind, n: usize, trials: usize, bootstraps: usize, master_seed: u64) -> Self {
        Self {
            kind,
            n,
            trials,
            bootstraps,
            sidedness: kind.reference_sidedness(),
            master_seed,
            alpha: 0.05,
            fast_path: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("signal length must be at least 2, got {}", self.n)));
        }
        self.test_config(0).validate()
    }

    fn test_config(&self, seed: u64) -> TestConfig {
        TestConfig {
            bootstraps: self.bootstraps,
            alpha: self.alpha,
            sidedness: self.sidedness,
            seed,
            demean: false,
            fast_path: self.fast_path,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub config: CellConfig,
    pub rejection_rate: f64,
    pub mean_p: f64,
    /// One p-value per trial, in trial order.
    pub p_values: Vec<f64>,
}

impl CellResult {
    pub fn rejections(&self) -> usize {
        self.p_values.iter().filter(|&&p| p < self.config.alpha).count()
    }

    /// Binomial standard error of the rejection rate.
    pub fn standard_error(&self) -> f64 {
        let rate = self.rejection_rate;
        (rate * (1.0 - rate) / self.config.trials as f64).sqrt()
    }

    pub fn histogram(&self, bins: usize) -> Histogram {
        Histogram::of_unit_interval(&self.p_values, bins)
    }

    fn csv_row(&self) -> String {
        let c = &self.config;
        format!(
            "{},{},{},{},{},{},{}",
            c.kind, c.n, c.trials, c.bootstraps, c.sidedness, self.rejection_rate, self.mean_p
        )
    }
}

/// Runs every trial of one cell. Trials run in parallel; the result does not
/// depend on the number of threads.
pub fn run_cell(config: &CellConfig) -> Result<CellResult> {
    config.validate()?;
    let p_values = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| {
            let spec = ProcessSpec::new(config.kind, config.n, derive_seed(config.master_seed, t, domain::GENERATE));
            let signal = generate(&spec)?;
            let test = config.test_config(derive_seed(config.master_seed, t, domain::TEST));
            Ok(run_test(&signal, &test)?.p_value)
        })
        .collect::<Result<Vec<f64>>>()?;
    let trials = p_values.len() as f64;
    let rejections = p_values.iter().filter(|&&p| p < config.alpha).count();
    Ok(CellResult {
        config: *config,
        rejection_rate: rejections as f64 / trials,
        mean_p: p_values.iter().sum::<f64>() / trials,
        p_values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableConfig {
    pub kinds: Vec<ProcessKind>,
    pub lengths: Vec<usize>,
    /// Trials for the stationary (size) process.
    pub size_trials: usize,
    /// Trials for the nonstationary (power) processes.
    pub power_trials: usize,
    pub bootstraps: usize,
    pub master_seed: u64,
}

impl TableConfig {
    /// Minutes-scale defaults: 1000 size trials, 500 power trials, `B = 500`.
    pub fn desk_scale(master_seed: u64) -> Self {
        Self {
            kinds: ProcessKind::ALL.to_vec(),
            lengths: LENGTH_GRID.to_vec(),
            size_trials: 1000,
            power_trials: 500,
            bootstraps: 500,
            master_seed,
        }
    }

    /// The reference experiment: 10,000 trials per cell with `B = 1000`.
    pub fn full_scale(master_seed: u64) -> Self {
        Self { size_trials: 10_000, power_trials: 10_000, bootstraps: 1000, ..Self::desk_scale(master_seed) }
    }

    /// Same trial count for every process.
    pub fn with_trials(mut self, trials: usize) -> Self {
        self.size_trials = trials;
        self.power_trials = trials;
        self
    }

    pub fn cells(&self) -> Vec<CellConfig> {
        let mut cells = Vec::with_capacity(self.kinds.len() * self.lengths.len());
        for &kind in &self.kinds {
            for &n in &self.lengths {
                let trials = if kind == ProcessKind::Ar1 { self.size_trials } else { self.power_trials };
                let key = ((kind as u64) << 32) | n as u64;
                let seed = derive_seed(self.master_seed, key, domain::CELL);
                cells.push(CellConfig::new(kind, n, trials, self.bootstraps, seed));
            }
        }
        cells
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub master_seed: u64,
    pub cells: Vec<CellResult>,
}

impl MonteCarloReport {
    pub fn cell(&self, kind: ProcessKind, n: usize) -> Option<&CellResult> {
        self.cells.iter().find(|c| c.config.kind == kind && c.config.n == n)
    }

    /// One row per cell under [`REPORT_HEADER`].
    pub fn to_csv(&self) -> String {
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        for cell in &self.cells {
            out.push_str(&cell.csv_row());
            out.push('\n');
        }
        out
    }

    /// Rejection percentages laid out with lengths as rows and processes as columns.
    pub fn percentage_table(&self) -> String {
        let mut kinds: Vec<ProcessKind> = self.cells.iter().map(|c| c.config.kind).collect();
        kinds.sort();
        kinds.dedup();
        let mut lengths: Vec<usize> = self.cells.iter().map(|c| c.config.n).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths.dedup();

        let mut out = format!("{:>6}", "N");
        for kind in &kinds {
            let _ = write!(out, " {:>8}", kind.as_str());
        }
        out.push('\n');
        for n in lengths {
            let _ = write!(out, "{n:>6}");
            for &kind in &kinds {
                match self.cell(kind, n) {
                    Some(cell) => {
                        let _ = write!(out, " {:>7.2}%", 100.0 * cell.rejection_rate);
                    }
                    None => {
                        let _ = write!(out, " {:>8}", "-");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn run_table(config: &TableConfig) -> Result<MonteCarloReport> {
    if config.kinds.is_empty() || config.lengths.is_empty() {
        return Err(Error::InvalidArgument("table needs at least one process and one length".into()));
    }
    let cells = config.cells().iter().map(run_cell).collect::<Result<Vec<_>>>()?;
    Ok(MonteCarloReport { master_seed: config.master_seed, cells })
}

/// Equal-width histogram of values on `[0, 1]`; the last bin is closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn of_unit_interval(values: &[f64], bins: usize) -> Self {
        let bins = bins.max(1);
        let edges = (0..=bins).map(|i| i as f64 / bins as f64).collect();
        let mut counts = vec![0; bins];
        for &v in values {
            let idx = ((v * bins as f64).floor() as usize).min(bins - 1);
            counts[idx] += 1;
        }
        Self { edges, counts }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count\n");
        for (i, count) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", self.edges[i], self.edges[i + 1], count);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_bins() {
        let h = Histogram::of_unit_interval(&[0.0, 0.04, 0.05, 0.5, 0.999, 1.0], 20);
        assert_eq!(h.counts.len(), 20);
        assert_eq!(h.counts[0], 2);
        assert_eq!(h.counts[1], 1);
        assert_eq!(h.counts[10], 1);
        assert_eq!(h.counts[19], 2);
        assert!(h.to_csv().starts_with("bin_lo,bin_hi,count\n0,0.05,2\n"));
    }

    #[test]
    fn cell_is_deterministic() {
        let config = CellConfig::new(ProcessKind::Jump, 50, 20, 50, 5);
        let a = run_cell(&config).unwrap();
        assert_eq!(a, run_cell(&config).unwrap());
        assert_eq!(a.p_values.len(), 20);
        assert!((0.0..=1.0).contains(&a.rejection_rate));
        assert_eq!(a.rejections() as f64 / 20.0, a.rejection_rate);
    }

    #[test]
    fn invalid_cells() {
        let mut config = CellConfig::new(ProcessKind::Ar1, 50, 0, 50, 5);
        assert!(matches!(run_cell(&config), Err(Error::InvalidArgument(_))));
        config.trials = 1;
        config.bootstraps = 0;
        assert!(run_cell(&config).is_err());
        config.bootstraps = 10;
        config.n = 1;
        assert!(run_cell(&config).is_err());
    }

    #[test]
    fn single_trial_grid_is_well_formed() {
        let config = TableConfig { bootstraps: 20, ..TableConfig::desk_scale(3).with_trials(1) };
        let report = run_table(&config).unwrap();
        assert_eq!(report.cells.len(), 21);
        assert!(report.cells.iter().all(|c| c.rejection_rate == 0.0 || c.rejection_rate == 1.0));
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 22);
        assert_eq!(csv.lines().next(), Some(REPORT_HEADER));
        assert!(report.percentage_table().lines().count() == 8);
    }

    #[test]
    fn cell_seeds_differ_across_grid() {
        let cells = TableConfig::desk_scale(1).cells();
        let mut seeds: Vec<u64> = cells.iter().map(|c| c.master_seed).collect();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), cells.len());
        assert_eq!(cells[0].sidedness, Sidedness::TwoSided);
        assert_eq!(cells[7].trials, 500);
    }
}
