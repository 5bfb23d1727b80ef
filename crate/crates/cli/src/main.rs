//! `kamcap`: model, normalize, estimate, frequency maps and noble frequencies.

mod commands;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kamcap::Rational;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kamcap::Error),
    #[error("{path}: {msg}")]
    Config { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    /// Already rendered by the argument parser.
    #[error("{0}")]
    Parse(String),
}

/// What a successful command reports through the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Done,
    NotProved,
}

#[derive(Parser, Debug)]
#[command(name = "kamcap", version, about = "KAM computer-assisted proofs and frequency maps for a controlled field-line Hamiltonian")]
pub struct Cli {
    /// File of `key = value` lines using long flag names; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the input Hamiltonian and its frequency file.
    Model(ModelArgs),
    /// Run the explicit normalization steps and write the ledger.
    Normalize(NormalizeArgs),
    /// Propagate the ledger estimates and check the KAM condition.
    Estimate(EstimateArgs),
    /// Model, normalization and estimates in one go.
    Run(RunArgs),
    /// Frequency-action map of the field-line flow.
    Fam(FamArgs),
    /// Noble mediant of two adjacent fractions.
    Noble(NobleArgs),
}

#[derive(Args, Debug, Clone)]
struct ModelSpec {
    /// Perturbation amplitude, as a decimal.
    #[arg(long)]
    eps: String,
    /// Action at which the control term is built.
    #[arg(long, default_value = "0.35")]
    psi: String,
    /// Target frequency, as a decimal.
    #[arg(long, conflicts_with = "noble")]
    omega: Option<String>,
    /// Target the noble mediant of two adjacent fractions.
    #[arg(long, num_args = 2, value_names = ["N1/D1", "N2/D2"])]
    noble: Option<Vec<Rational>>,
    /// Number of explicit normalization steps.
    #[arg(long, default_value_t = 12)]
    r_i: usize,
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[command(flatten)]
    spec: ModelSpec,
    /// Output Hamiltonian.
    #[arg(long, default_value = "h0.tfh")]
    out: PathBuf,
    /// Output frequency file.
    #[arg(long, default_value = "omega.freq")]
    freq_out: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct NormalizeOpts {
    /// Trigonometric degree cap; `2K·R_I` by default.
    #[arg(long)]
    trunc: Option<u32>,
    /// Smallest accepted divisor `|k1ω + k2|`.
    #[arg(long, default_value_t = 1e-12)]
    min_divisor: f64,
}

#[derive(Args, Debug)]
struct NormalizeArgs {
    #[arg(long, default_value = "h0.tfh")]
    tfh: PathBuf,
    #[arg(long, default_value = "omega.freq")]
    freq: PathBuf,
    #[command(flatten)]
    opts: NormalizeOpts,
    #[arg(long, default_value = "ledger.txt")]
    ledger: PathBuf,
    /// The Hamiltonian after the last explicit step.
    #[arg(long, default_value = "hri.tfh")]
    snapshot: PathBuf,
    /// One JSON line per step.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct EstimateOpts {
    /// Last estimated step.
    #[arg(long, default_value_t = 600)]
    r_ii: usize,
    /// Value used for `a_1` when every first-step generator vanishes.
    #[arg(long, default_value_t = 1e-9)]
    a_floor: f64,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long, default_value = "ledger.txt")]
    ledger: PathBuf,
    /// Frequency file naming the noble pair that fixes γ.
    #[arg(long, default_value = "omega.freq")]
    freq: PathBuf,
    /// Diophantine constant, overriding the one derived from the frequency file.
    #[arg(long)]
    gamma: Option<String>,
    #[command(flatten)]
    opts: EstimateOpts,
    #[arg(long, default_value = "certificate.txt")]
    certificate: PathBuf,
    /// Also compare majorants against the explicit norms for orders up to `R_I`.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    spec: ModelSpec,
    #[command(flatten)]
    normalize: NormalizeOpts,
    #[command(flatten)]
    estimate: EstimateOpts,
    /// Directory receiving every artifact.
    #[arg(long, default_value = ".")]
    dir: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ObservableArg {
    Phase,
    Action,
}

#[derive(Args, Debug)]
struct FamArgs {
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    /// Number of orbits.
    #[arg(long, default_value_t = 200)]
    n: usize,
    /// Perturbation periods per orbit.
    #[arg(long, default_value_t = (1 << 15) + 1)]
    periods: usize,
    /// Integration steps per period.
    #[arg(long, default_value_t = 64)]
    substeps: usize,
    /// Integrate `H + εv` without the control term.
    #[arg(long)]
    no_control: bool,
    /// Action at which the control term is built.
    #[arg(long, default_value_t = 0.35)]
    psi_control: f64,
    #[arg(long, value_enum, default_value = "phase")]
    observable: ObservableArg,
    /// Frequency spread allowed inside a plateau.
    #[arg(long, default_value_t = 1e-6)]
    plateau_tol: f64,
    /// Two-window frequency drift above which an orbit is flagged.
    #[arg(long, default_value_t = 1e-6)]
    drift_tol: f64,
    /// Shortest run reported as a regular branch.
    #[arg(long, default_value_t = 20)]
    branch_len: usize,
    #[arg(long, default_value = "fam.csv")]
    out: PathBuf,
    /// Gnuplot script plotting the CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NobleArgs {
    first: Rational,
    second: Rational,
    /// Digits after the decimal point.
    #[arg(long, default_value_t = 6)]
    digits: usize,
}

fn run(argv: Vec<OsString>) -> Result<Outcome, CliError> {
    let argv = config::apply(argv)?;
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = e.print();
                return Ok(Outcome::Done);
            }
            return Err(CliError::Parse(e.render().to_string().trim_end().to_string()));
        }
    };
    match cli.command {
        Command::Model(a) => commands::model(&a),
        Command::Normalize(a) => commands::normalize(&a),
        Command::Estimate(a) => commands::estimate(&a),
        Command::Run(a) => commands::run(&a),
        Command::Fam(a) => commands::fam(&a),
        Command::Noble(a) => commands::noble(&a),
    }
}

fn main() -> ExitCode {
    match run(std::env::args_os().collect()) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::NotProved) => ExitCode::from(2),
        Err(CliError::Parse(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
