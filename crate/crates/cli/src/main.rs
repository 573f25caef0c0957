mod algorithms;
mod commands;
mod error;
mod io;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use silhouette_ub::baselines::Linkage;
use silhouette_ub::Metric;

use crate::algorithms::AlgorithmName;
use crate::error::CliError;

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "SILHOUETTE_UB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "silhouette-ub", version, about = "Upper bounds on the average silhouette width")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-point silhouette ceilings and their mean, min and max.
    Bound {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        kappa: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Silhouette components of a given labelling.
    Silhouette {
        #[command(flatten)]
        input: InputArgs,
        /// One label per line; arbitrary ids.
        #[arg(long)]
        labels: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive search for the silhouette-optimal clustering (n <= 15).
    Optimal {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        ks: KArgs,
        /// Minimum cluster size.
        #[arg(long, default_value_t = 1)]
        kappa: usize,
        #[arg(long)]
        labels_output: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// ASW per K for one or more algorithms, alongside UB and UB_kappa.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        ks: KArgs,
        /// Comma-separated or repeated.
        #[arg(long, required = true, value_delimiter = ',')]
        algorithm: Vec<AlgorithmName>,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long, default_value_t = 1)]
        kappa: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Choose K with the bound-based early stopping rule.
    Select {
        #[command(flatten)]
        input: InputArgs,
        /// `--k B` or `--k-range 2:B`; K is scanned from 2 to B.
        #[command(flatten)]
        ks: KArgs,
        #[arg(long)]
        algorithm: AlgorithmName,
        #[command(flatten)]
        algo: AlgoArgs,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        /// Minimum cluster size used for the bound.
        #[arg(long)]
        kappa: Option<usize>,
        /// Evaluate every K and report each worst-case relative error.
        #[arg(long)]
        no_stop_sweep: bool,
        #[arg(long)]
        labels_output: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gaussian blobs from a tag `n_samples-n_features-centers-cluster_std`.
    Gen {
        tag: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points CSV.
        #[arg(long)]
        output: PathBuf,
        /// Ground-truth labels CSV.
        #[arg(long)]
        labels_output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputKind::Points)]
    input_kind: InputKind,
    #[arg(long, default_value_t = Metric::Euclidean)]
    metric: Metric,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct KArgs {
    #[arg(long, conflicts_with = "k_range")]
    k: Option<usize>,
    /// Inclusive range `A:B`.
    #[arg(long, value_parser = parse_k_range)]
    k_range: Option<(usize, usize)>,
}

#[derive(Args, Debug)]
struct AlgoArgs {
    #[arg(long, default_value = "single")]
    linkage: Linkage,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputKind {
    Points,
    Matrix,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

fn parse_k_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected A:B")?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::invalid("InvalidConfig", format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::invalid("InvalidConfig", e))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Bound { input, kappa, output } => commands::bound(&input.into(), kappa, &output.into()),
        Command::Silhouette { input, labels, output } => {
            commands::silhouette(&input.into(), &labels, &output.into())
        }
        Command::Optimal {
            input,
            ks,
            kappa,
            labels_output,
            output,
        } => commands::optimal(&input.into(), ks.range(), kappa, labels_output.as_deref(), &output.into()),
        Command::Sweep {
            input,
            ks,
            algorithm,
            algo,
            kappa,
            output,
        } => {
            let range = ks.range().ok_or_else(|| CliError::invalid("InvalidConfig", "sweep needs --k or --k-range"))?;
            let names: Vec<_> = algorithm.into_iter().map(|a| a.resolve(algo.linkage)).collect();
            commands::sweep(&input.into(), range, &names, algo.seed, kappa, &output.into())
        }
        Command::Select {
            input,
            ks,
            algorithm,
            algo,
            epsilon,
            tau,
            kappa,
            no_stop_sweep,
            labels_output,
            output,
        } => {
            let k_max = match (ks.k, ks.k_range) {
                (Some(k), _) => k,
                (None, Some((2, b))) => b,
                (None, Some((a, _))) => {
                    return Err(CliError::invalid(
                        "InvalidConfig",
                        format!("select scans K from 2; --k-range must start at 2, got {a}"),
                    ))
                }
                (None, None) => return Err(CliError::invalid("InvalidConfig", "select needs --k or --k-range")),
            };
            commands::select(
                &input.into(),
                &commands::SelectArgs {
                    algorithm: algorithm.resolve(algo.linkage),
                    seed: algo.seed,
                    epsilon,
                    tau,
                    k_max,
                    kappa,
                    no_stop: no_stop_sweep,
                },
                labels_output.as_deref(),
                &output.into(),
            )
        }
        Command::Gen {
            tag,
            seed,
            output,
            labels_output,
        } => commands::gen(&tag, seed, &output, labels_output.as_deref()),
    }
}

impl KArgs {
    fn range(&self) -> Option<(usize, usize)> {
        self.k.map(|k| (k, k)).or(self.k_range)
    }
}

impl From<InputArgs> for commands::Input {
    fn from(a: InputArgs) -> Self {
        Self {
            path: a.input,
            as_matrix: a.input_kind == InputKind::Matrix,
            metric: a.metric,
        }
    }
}

impl From<OutputArgs> for commands::Output {
    fn from(a: OutputArgs) -> Self {
        Self {
            path: a.output,
            format: a.format,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            let err = CliError::invalid("UsageError", first);
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
