//! `grover-init` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numerical
//! failure, 3 I/O failure. Data goes to stdout or the `--out` file;
//! warnings go to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grover_init::plot::{scatter_svg, XAxis};
use grover_init::{
    build_diffusion_matrix, markov_experiment, report, run_baseline, run_sweep, EnsembleSpec,
    Error as CoreError, GroverConfig, IterationSchedule, Metric, Seed, SweepConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "grover-init",
    version,
    about = "Grover search with noisy initial states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Success of a uniform-start search for several database sizes.
    Baseline(BaselineArgs),
    /// Monte-Carlo sweep of success against initial-state variance.
    Sweep(SweepArgs),
    /// Dump the N x N diffusion matrix as CSV.
    Diffusion(DiffusionArgs),
    /// Empirical exceedance of 1/N + eps against the Markov bound.
    Markov(MarkovArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Axis {
    Ratio,
    Variance,
}

#[derive(Args, Debug)]
struct BaselineArgs {
    /// Comma-separated database sizes.
    #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
    sizes: Vec<usize>,
    /// paper, standard or fixed:<k>
    #[arg(long, default_value = "standard")]
    schedule: IterationSchedule,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Register size; overrides the ensemble's n.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = GroverConfig::DEFAULT_MARKED)]
    marked: usize,
    #[arg(long, default_value = "standard")]
    schedule: IterationSchedule,
    /// Inline JSON (`{"kind": "uniform_signed", "n": 8}`) or a path to a JSON file.
    #[arg(long)]
    ensemble: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[arg(long, env = "GROVER_INIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "probability")]
    metric: Metric,
    /// Records CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary JSON. Defaults to the --out path with a .json extension.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// SVG scatter plot.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Horizontal axis of the plot.
    #[arg(long, value_enum, default_value = "ratio")]
    axis: Axis,
    /// Worker threads; 0 uses all cores. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args, Debug)]
struct DiffusionArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MarkovArgs {
    /// Register size; overrides the ensemble's n.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    ensemble: String,
    /// Comma-separated threshold offsets, each > 0.
    #[arg(long, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, env = "GROVER_INIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Baseline(args) => cmd_baseline(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Diffusion(args) => cmd_diffusion(args),
        Command::Markov(args) => cmd_markov(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn warn_if_not_power_of_two(n: usize) {
    if n >= 2 && !n.is_power_of_two() {
        eprintln!("warning: {n} is not a power of two, so it does not correspond to a whole number of qubits");
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_err(path, e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn cmd_baseline(args: BaselineArgs) -> Result<(), CliError> {
    if args.sizes.is_empty() {
        return Err(CliError::Usage("--sizes is empty".into()));
    }
    args.sizes
        .iter()
        .copied()
        .for_each(warn_if_not_power_of_two);
    let rows = run_baseline(&args.sizes, args.schedule)?;
    let text = match args.format {
        TableFormat::Csv => report::baseline_csv(&rows),
        TableFormat::Json => to_json(&rows),
    };
    emit(args.out.as_deref(), &text)
}

fn load_ensemble(arg: &str, n: Option<usize>) -> Result<EnsembleSpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        let path = Path::new(arg);
        fs::read_to_string(path).map_err(|e| io_err(path, e))?
    };
    let spec: EnsembleSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad ensemble JSON: {e}")))?;
    let spec = match n {
        Some(n) => spec.with_dim(n),
        None => spec,
    };
    spec.validate()?;
    Ok(spec)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let ensemble = load_ensemble(&args.ensemble, args.n)?;
    let n = ensemble.dim();
    warn_if_not_power_of_two(n);
    let config = SweepConfig {
        grover: GroverConfig::new(n, args.marked, args.schedule)?,
        ensemble,
        num_samples: args.samples,
        seed: Seed(args.seed),
        num_bins: args.bins,
        metric: args.metric,
    };
    config.validate()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let summary = pool.install(|| run_sweep(&config))?;

    emit(args.out.as_deref(), &report::records_csv(&summary))?;

    let summary_path = args
        .summary
        .or_else(|| args.out.as_ref().map(|p| p.with_extension("json")));
    if let Some(path) = summary_path {
        emit(Some(&path), &to_json(&report::summary_json(&summary)))?;
    }
    if let Some(path) = args.plot {
        let axis = match args.axis {
            Axis::Ratio => XAxis::Ratio,
            Axis::Variance => XAxis::Variance,
        };
        emit(Some(&path), &scatter_svg(&summary, axis))?;
    }
    Ok(())
}

fn cmd_diffusion(args: DiffusionArgs) -> Result<(), CliError> {
    let matrix = build_diffusion_matrix(args.n)?;
    warn_if_not_power_of_two(args.n);
    emit(args.out.as_deref(), &report::matrix_csv(&matrix))
}

fn cmd_markov(args: MarkovArgs) -> Result<(), CliError> {
    let spec = load_ensemble(&args.ensemble, args.n)?;
    warn_if_not_power_of_two(spec.dim());
    let rows = markov_experiment(&spec, &args.eps, args.samples, Seed(args.seed))?;
    let text = match args.format {
        TableFormat::Csv => report::markov_csv(&rows),
        TableFormat::Json => to_json(&rows),
    };
    emit(args.out.as_deref(), &text)
}
