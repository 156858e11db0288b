//! Command-line front end for `tribokit`.
//!
//! [`run`] parses arguments and returns the rendered output together with
//! the exit status, so the binary is a thin wrapper and the commands can be
//! driven in-process.
//!
//! Exit statuses: 0 success, 2 usage, domain or I/O error, 3 verification
//! or crosscheck failure.

pub mod bench;
mod commands;
pub mod config;
pub mod transport;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tribokit::SequenceKind;

pub use config::{CliConfig, IndexRange, OutputFormat, CONFIG_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tribokit",
    version,
    about = "Exact evaluation and identity checking for Tribonacci-family sequences"
)]
pub struct Cli {
    /// Output format: plain, json, csv or bfile.
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,

    /// Configuration file (overrides $TRIBOKIT_CONFIG).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    Recurrence,
    Matrix,
    Binet,
}

fn parse_kind(s: &str) -> Result<SequenceKind, String> {
    s.parse()
        .map_err(|e: tribokit::seqcore::ParseKindError| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate T, S or C over an index range.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Check identities by exhaustive evaluation over index bounds.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Expand a rational generating function.
    #[command(allow_negative_numbers = true)]
    Expand(ExpandArgs),
    /// Show A^n with its trace and principal-minor sum.
    #[command(allow_negative_numbers = true)]
    Matrix { n: i64 },
    /// Roots of x^3 - x^2 - x - 1 and their Vieta residuals.
    Roots { precision: Option<u32> },
    /// Compare a b-file against the computed sequence.
    Crosscheck(CrosscheckArgs),
    /// Time the evaluation strategies at one index.
    #[command(allow_negative_numbers = true)]
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_parser = parse_kind)]
    pub kind: SequenceKind,
    pub lo: i64,
    pub hi: i64,
    #[arg(value_enum, default_value_t = Strategy::Recurrence)]
    pub strategy: Strategy,
    /// Decimal digits for the binet strategy.
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity id, `boundary`, or `all`.
    pub id: String,
    /// Range for n, `lo:hi` or `hi`.
    #[arg(long, value_name = "RANGE")]
    pub n: Option<IndexRange>,
    /// Range for m, `lo:hi` or `hi`.
    #[arg(long, value_name = "RANGE")]
    pub m: Option<IndexRange>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// `[NAME] COUNT`; NAME is S, C or CEven unless --num/--den are given.
    #[arg(num_args = 1..=2, required = true)]
    pub args: Vec<String>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "den"
    )]
    pub num: Option<Vec<i64>>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "num"
    )]
    pub den: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(value_parser = parse_kind)]
    pub kind: SequenceKind,
    /// b-file path; defaults to the fixture directory.
    pub fixture: Option<String>,
    /// Number of rows to compare.
    pub rows: Option<usize>,
    /// Download the b-file instead of reading a fixture.
    #[arg(long)]
    pub fetch: bool,
    #[arg(long, value_name = "URL")]
    pub endpoint: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_parser = parse_kind)]
    pub kind: SequenceKind,
    pub n: i64,
    #[arg(default_value_t = 1)]
    pub repetitions: u32,
    /// Decimal digits for the binet strategy.
    #[arg(long)]
    pub precision: Option<u32>,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
            code: EXIT_USAGE,
        }
    }

    fn failed(stdout: String, message: impl Into<String>) -> Self {
        Outcome {
            stdout,
            stderr: format!("{}\n", message.into()),
            code: EXIT_FAILURE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cli: Cli) -> Outcome {
    let config = match CliConfig::resolve(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let format = cli.format.unwrap_or(config.output_format);
    commands::dispatch(cli.command, &config, format)
}
