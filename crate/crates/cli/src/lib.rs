//! Command-line front end for `confauc`.
//!
//! [`run`] parses arguments, executes one command and returns the process
//! exit code; all output goes through the supplied writers so the whole
//! surface can be exercised in-process.

pub mod input;
mod render;

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use confauc::{ClassWeights, Criterion, RandomTrialConfig};
use thiserror::Error;

use crate::input::InputError;
use crate::render::Report;

/// Exit codes, disjoint by error class.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE_OR_IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const SINGLE_CLASS: u8 = 3;
    pub const NO_FEASIBLE_ROW: u8 = 4;
    pub const ALL_TRIALS_SKIPPED: u8 = 5;
    pub const NO_DEFINED_METRIC: u8 = 6;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated text with a header row.
    Csv,
    /// One JSON document.
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "confauc",
    version,
    about = "AUC, confidence-weighted AUC and per-threshold metrics for binary classifiers"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// BCE class weights as `w+,w-`.
    #[arg(long, global = true, value_name = "W+,W-", value_parser = parse_weights)]
    weights: Option<ClassWeights>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trapezoid AUC of a prediction file.
    Auc { input: PathBuf },
    /// AUC, alpha, beta and cAUC of a prediction file.
    Cauc { input: PathBuf },
    /// ROC points as threshold,fpr,tpr from (0,0) to (1,1).
    Roc { input: PathBuf },
    /// Metrics at every effective threshold.
    Table {
        input: PathBuf,
        /// Also select the lowest-fpr row with tpr at or above this floor.
        #[arg(long)]
        tpr_floor: Option<f64>,
        /// Skip candidate rows whose fpr is within this distance of the best.
        #[arg(long, requires = "tpr_floor", default_value_t = 0.0)]
        fpr_margin: f64,
    },
    /// Monte Carlo over uniformly random labels and probabilities.
    Simulate {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay an epoch log and recommend stopping epochs.
    Monitor {
        input: PathBuf,
        /// Run one criterion instead of all three.
        #[arg(long, value_parser = parse_criterion)]
        criterion: Option<Criterion>,
    },
}

fn parse_weights(s: &str) -> Result<ClassWeights, String> {
    let (pos, neg) = s
        .split_once(',')
        .ok_or_else(|| "expected two comma-separated weights".to_string())?;
    let number = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    ClassWeights::new(number(pos)?, number(neg)?).map_err(|e| e.to_string())
}

fn parse_criterion(s: &str) -> Result<Criterion, String> {
    s.parse()
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] confauc::Error),
}

fn core_exit_code(err: &confauc::Error) -> u8 {
    use confauc::Error as E;
    match err {
        E::SingleClassInput { .. } => exit::SINGLE_CLASS,
        E::NoFeasibleRow { .. } => exit::NO_FEASIBLE_ROW,
        E::AllTrialsSkipped { .. } => exit::ALL_TRIALS_SKIPPED,
        E::NoDefinedMetric(_) => exit::NO_DEFINED_METRIC,
        _ => exit::PARSE,
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => exit::USAGE_OR_IO,
            CliError::Input(InputError::Parse(_)) => exit::PARSE,
            CliError::Input(InputError::Data(e)) | CliError::Core(e) => core_exit_code(e),
        }
    }
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin.read_to_string(&mut text).map_err(io_err)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io_err)?;
    }
    Ok(text)
}

/// The report plus an optional deferred failure (monitor prints its report
/// even when a criterion has no defined metric).
fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(Report, Option<CliError>), CliError> {
    let predictions = |path: &PathBuf, stdin: &mut dyn Read| -> Result<_, CliError> {
        Ok(input::parse_predictions(&read_input(path, stdin)?)?)
    };
    let report = match &cli.command {
        Command::Auc { input } => Report::Auc(confauc::auc(&predictions(input, stdin)?)?),
        Command::Cauc { input } => Report::Cauc(confauc::cauc(&predictions(input, stdin)?)?),
        Command::Roc { input } => Report::Roc(confauc::roc_curve(&predictions(input, stdin)?)?),
        Command::Table {
            input,
            tpr_floor,
            fpr_margin,
        } => {
            let table = confauc::build_table(&predictions(input, stdin)?);
            let selection = tpr_floor
                .map(|floor| confauc::best_row_at_tpr_floor(&table, floor, *fpr_margin))
                .transpose()?;
            Report::Table { table, selection }
        }
        Command::Simulate { n, trials, seed } => {
            let config = RandomTrialConfig::new(*n, *trials, *seed)?;
            Report::Simulate {
                config,
                summary: confauc::monte_carlo(&config)?,
            }
        }
        Command::Monitor { input, criterion } => {
            let log = input::parse_epoch_log(&read_input(input, stdin)?)?;
            let trajectory = confauc::compute_trajectory(&log, cli.weights)?;
            let criteria = criterion.map_or(Criterion::ALL.to_vec(), |c| vec![c]);
            let comparison = confauc::compare_criteria(&trajectory, &criteria);
            let failure = criteria
                .iter()
                .find_map(|&c| confauc::recommend_stop(&trajectory, c).err())
                .map(CliError::Core);
            return Ok((
                Report::Monitor {
                    trajectory,
                    comparison,
                },
                failure,
            ));
        }
    };
    Ok((report, None))
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let (sink, code): (&mut dyn Write, u8) = if e.use_stderr() {
                (stderr, exit::USAGE_OR_IO)
            } else {
                (stdout, exit::OK)
            };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };

    let (report, failure) = match execute(&cli, stdin) {
        Ok(done) => done,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = stdout.write_all(report.render(cli.format).as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            let _ = writeln!(stderr, "error: writing output: {e}");
            return exit::USAGE_OR_IO;
        }
    }
    match failure {
        Some(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
        None => exit::OK,
    }
}
