use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::{format_float, ingest, null_samples_to_csv, signal_to_csv, ResultDocument};
use crate::generators::{generate, Process, ProcessKind, ProcessSpec};
use crate::hypothesis::{run_test, Sidedness, TestConfig};
use crate::montecarlo::{run_table, TableConfig, LENGTH_GRID};
use crate::stats::{expected_null_power_variance, AmplitudeSpectrum};
use crate::Error;

/// The run finished; the statistical decision is in the output, not the status.
pub const EXIT_OK: i32 = 0;
/// Unreadable, malformed or degenerate input, or an unwritable output.
pub const EXIT_INPUT_ERROR: i32 = 2;
/// Bad flags or out-of-range arguments.
pub const EXIT_USAGE_ERROR: i32 = 3;

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => EXIT_USAGE_ERROR,
        Error::InvalidInput(_) | Error::Degenerate(_) | Error::Parse { .. } | Error::Io(_) => EXIT_INPUT_ERROR,
    }
}

#[derive(Debug, Parser)]
#[command(name = "powervar", version, about = "Bootstrap power-variance test for nonstationarity in complex-valued signals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a signal file for nonstationarity and print a JSON result.
    Test(TestArgs),
    /// Write a synthetic process to a signal file.
    Generate(GenerateArgs),
    /// Estimate rejection rates over a grid of processes and lengths.
    Montecarlo(MonteCarloArgs),
    /// Print the analytic mean of the surrogate power variance for a signal file.
    Expectation(ExpectationArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Signal file with one `re,im` row per sample.
    pub path: PathBuf,
    /// Treat rows as positions and test their first differences.
    #[arg(long)]
    pub differentiate: bool,
    /// Subtract the complex sample mean before testing.
    #[arg(long)]
    pub demean: bool,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Number of bootstrap replicates.
    #[arg(short = 'B', long = "bootstraps", default_value_t = 1000)]
    pub bootstraps: usize,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// two, high (q) or low (r).
    #[arg(long, default_value = "two", value_parser = parse_sidedness)]
    pub sided: Sidedness,
    #[arg(long, env = "POWERVAR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Always run the bootstrap, even when the analytic mean decides a one-sided test.
    #[arg(long)]
    pub no_fast_path: bool,
    /// Also write the replicate power variances to this CSV file.
    #[arg(long, value_name = "PATH")]
    pub emit_null: Option<PathBuf>,
    /// Add the current time to the result document.
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// ar1, jump or cyclo.
    #[arg(value_parser = parse_kind)]
    pub kind: ProcessKind,
    #[arg(short, long)]
    pub n: usize,
    #[arg(long, env = "POWERVAR_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long, value_name = "PATH")]
    pub out: PathBuf,
    /// AR(1) coefficient.
    #[arg(long)]
    pub coefficient: Option<f64>,
    /// AR(1) innovation standard deviation.
    #[arg(long)]
    pub innovation_scale: Option<f64>,
    /// Jump level before the midpoint.
    #[arg(long)]
    pub low_level: Option<f64>,
    /// Jump level after the midpoint.
    #[arg(long)]
    pub high_level: Option<f64>,
    /// Jump noise multiplier.
    #[arg(long)]
    pub noise_scale: Option<f64>,
    /// Cyclo-stationary phasor amplitude.
    #[arg(long)]
    pub amplitude: Option<f64>,
    /// Cyclo-stationary phase advance over the whole record, in radians.
    #[arg(long)]
    pub frequency: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    /// Processes to run (default: all three).
    #[arg(long = "process", value_delimiter = ',', value_parser = parse_kind)]
    pub processes: Vec<ProcessKind>,
    /// Signal lengths (default: 10,20,50,100,200,500,1000).
    #[arg(long = "n", value_delimiter = ',')]
    pub lengths: Vec<usize>,
    /// Trials per cell for every process; overrides the size/power defaults.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(short = 'B', long = "bootstraps")]
    pub bootstraps: Option<usize>,
    #[arg(long, env = "POWERVAR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// 10,000 trials per cell with B = 1000 instead of the desk-scale defaults.
    #[arg(long)]
    pub full_scale: bool,
    /// Report CSV path.
    #[arg(short, long, value_name = "PATH")]
    pub out: PathBuf,
    /// Directory for per-cell p-value histograms (default: next to the report).
    #[arg(long, value_name = "DIR")]
    pub hist_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
}

#[derive(Debug, Args)]
pub struct ExpectationArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

fn parse_sidedness(s: &str) -> Result<Sidedness, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<ProcessKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load(input: &InputArgs) -> crate::Result<crate::ComplexSignal> {
    let signal = ingest(&input.path, input.differentiate)?;
    Ok(if input.demean { signal.demeaned() } else { signal })
}

fn write_file(path: &Path, contents: &str) -> crate::Result<()> {
    std::fs::write(path, contents).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn cmd_test(args: &TestArgs, stdout: &mut dyn Write) -> crate::Result<()> {
    let config = TestConfig {
        bootstraps: args.bootstraps,
        alpha: args.alpha,
        sidedness: args.sided,
        seed: args.seed,
        demean: args.input.demean,
        // The null sample dump needs the bootstrap to run.
        fast_path: !args.no_fast_path && args.emit_null.is_none(),
    };
    config.validate()?;
    let signal = ingest(&args.input.path, args.input.differentiate)?;
    let result = run_test(&signal, &config)?;

    if let (Some(path), Some(samples)) = (&args.emit_null, &result.null_samples) {
        write_file(path, &null_samples_to_csv(samples))?;
    }
    let mut doc = ResultDocument::from_result(&result);
    doc.file = Some(args.input.path.display().to_string());
    doc.differentiate = args.input.differentiate;
    if args.timestamp {
        doc.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    }
    writeln!(stdout, "{}", doc.to_json())?;
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> crate::Result<()> {
    let mut process = args.kind.default_process();
    match &mut process {
        Process::Ar1 { coefficient, innovation_scale } => {
            *coefficient = args.coefficient.unwrap_or(*coefficient);
            *innovation_scale = args.innovation_scale.unwrap_or(*innovation_scale);
        }
        Process::Jump { low_level, high_level, noise_scale } => {
            *low_level = args.low_level.unwrap_or(*low_level);
            *high_level = args.high_level.unwrap_or(*high_level);
            *noise_scale = args.noise_scale.unwrap_or(*noise_scale);
        }
        Process::Cyclo { amplitude, frequency } => {
            *amplitude = args.amplitude.unwrap_or(*amplitude);
            *frequency = args.frequency.unwrap_or(*frequency);
        }
    }
    let signal = generate(&ProcessSpec { process, n: args.n, seed: args.seed })?;
    write_file(&args.out, &signal_to_csv(&signal))
}

fn cmd_montecarlo(args: &MonteCarloArgs, stdout: &mut dyn Write) -> crate::Result<()> {
    let mut config = if args.full_scale {
        TableConfig::full_scale(args.seed)
    } else {
        TableConfig::desk_scale(args.seed)
    };
    if !args.processes.is_empty() {
        config.kinds = args.processes.clone();
    }
    config.lengths = if args.lengths.is_empty() { LENGTH_GRID.to_vec() } else { args.lengths.clone() };
    if let Some(trials) = args.trials {
        config = config.with_trials(trials);
    }
    if let Some(b) = args.bootstraps {
        config.bootstraps = b;
    }
    if config.size_trials == 0 || config.power_trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if config.bootstraps == 0 {
        return Err(Error::InvalidArgument("number of bootstraps must be at least 1".into()));
    }
    if args.bins == 0 {
        return Err(Error::InvalidArgument("histogram needs at least one bin".into()));
    }

    let report = run_table(&config)?;
    write_file(&args.out, &report.to_csv())?;

    let hist_dir = match &args.hist_dir {
        Some(dir) => dir.clone(),
        None => args.out.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    if !hist_dir.as_os_str().is_empty() {
        std::fs::create_dir_all(&hist_dir)?;
    }
    let stem = args.out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    for cell in &report.cells {
        let name = format!("{stem}_{}_n{}_hist.csv", cell.config.kind, cell.config.n);
        write_file(&hist_dir.join(name), &cell.histogram(args.bins).to_csv())?;
    }
    write!(stdout, "{}", report.percentage_table())?;
    Ok(())
}

fn cmd_expectation(args: &ExpectationArgs, stdout: &mut dyn Write) -> crate::Result<()> {
    let signal = load(&args.input)?;
    let amps = AmplitudeSpectrum::of_signal(&signal)?;
    writeln!(stdout, "{}", format_float(expected_null_power_variance(&amps)))?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{err}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{err}");
                    EXIT_USAGE_ERROR
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Test(args) => cmd_test(args, stdout),
        Command::Generate(args) => cmd_generate(args),
        Command::Montecarlo(args) => cmd_montecarlo(args, stdout),
        Command::Expectation(args) => cmd_expectation(args, stdout),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            exit_code(&err)
        }
    }
}
