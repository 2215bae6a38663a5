//! Command-line front end. [`run`] parses arguments and returns the text for
//! stdout and stderr together with the exit code, so every command can be
//! exercised without spawning a process.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 bound computed but not
//! significant (`bound`), reference row failed (`reproduce`) or coverage
//! check failed (`verify`).

mod commands;
pub mod record;
pub mod reproduce;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::BoundError;

pub use record::OutputRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_SIGNIFICANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "vc-bounds",
    version,
    about = "Evaluate, optimise and check shadow-sample VC bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one bound.
    Bound(BoundArgs),
    /// Recompute the published reference values.
    Reproduce(ReproduceArgs),
    /// Evaluate a bound over a parameter grid.
    Sweep(SweepArgs),
    /// Monte-Carlo coverage check of a bound.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntropyArg {
    LevelCount,
    RealLog,
}

#[derive(Debug, Clone, Args)]
#[command(group(clap::ArgGroup::new("complexity").required(true).args(["h", "log_class_size", "d"])))]
pub struct InstanceArgs {
    /// Theorem tag, e.g. transductive-improved.
    #[arg(long)]
    pub theorem: String,
    /// Training sample size.
    #[arg(long = "N", visible_alias = "n")]
    pub n: u64,
    /// Shadow multiplier, or `auto` to search 1..=k-max.
    #[arg(long, default_value = "1")]
    pub k: String,
    #[arg(long = "k-max", default_value_t = 100)]
    pub k_max: u64,
    /// VC dimension.
    #[arg(long)]
    pub h: Option<u32>,
    /// Natural log of the effective class size.
    #[arg(long = "log-class-size")]
    pub log_class_size: Option<f64>,
    /// Complexity exponent including ln(1/epsilon).
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub r1: f64,
    /// Real value, `auto` (sqrt(pi/d)/2) or `inv-sqrt-d`.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Chaining level, or `auto` for the best one.
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Real value or `dstar`.
    #[arg(long)]
    pub dbar: Option<String>,
    /// Use the weakened variance term of inductive-exchangeable-k1.
    #[arg(long)]
    pub weakened: bool,
    #[arg(long = "level-entropy", value_enum)]
    pub level_entropy: Option<EntropyArg>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = reproduce::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// k, alpha, r1 or j.
    #[arg(long)]
    pub vary: String,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long, conflicts_with = "points")]
    pub step: Option<f64>,
    /// Number of evenly spaced points instead of a step.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Thresholds,
    Intervals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputsArg {
    Uniform,
    Staggered,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub theorem: String,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "thresholds")]
    pub class: ClassArg,
    /// Number of grid points of the class.
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    /// Label noise rate.
    #[arg(long, default_value_t = 0.1)]
    pub noise: f64,
    /// Threshold of the labelling rule.
    #[arg(long, default_value_t = 0.3)]
    pub target: f64,
    #[arg(long, value_enum, default_value = "uniform")]
    pub inputs: InputsArg,
    /// Lift the N (k+1) trials <= 1e9 guard.
    #[arg(long)]
    pub force: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

/// Everything a command writes, plus its exit code.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// A failure reported as a one-line diagnostic naming the offending flag.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl CliError {
    fn flag(flag: &str, reason: impl std::fmt::Display) -> Self {
        CliError(format!("--{flag}: {reason}"))
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        match &e {
            BoundError::InvalidInput { field, reason } if !field.contains(' ') => {
                CliError::flag(field, reason)
            }
            BoundError::RequiresK1 { .. } => CliError::flag("k", &e),
            BoundError::RequiresVcDim { .. } => CliError::flag("h", &e),
            BoundError::NoAlphaParameter(_) => CliError::flag("alpha", &e),
            _ => CliError(e.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered, EXIT_OK)
            };
        }
    };
    let result = match &cli.command {
        Command::Bound(a) => commands::bound(a),
        Command::Reproduce(a) => commands::reproduce(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Verify(a) => commands::verify(a),
    };
    result.unwrap_or_else(Outcome::input_error)
}
