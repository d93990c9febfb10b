//! The `krein` command line: generate witnesses, check pairs, audit families.
//!
//! Exit codes: 0 when every check passes, 1 when a checked property fails,
//! 2 on unusable input or flags.

pub mod audit;
mod commands;
mod pretty;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use krein_core::decompose::{DEFAULT_BUDGET, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Overrides the default decomposition search seed.
pub const SEED_ENV: &str = "KREIN_SEED";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Whether every checked property held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn and(self, other: Outcome) -> Outcome {
        Outcome::from_bool(self == Outcome::Pass && other == Outcome::Pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "krein", version, about = "Normal matrices in indefinite scalar product spaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a witness pair and print its document.
    Generate(GenerateArgs),
    /// Check H-normality and report signature and rank.
    Verify(InputArgs),
    /// Report spectrum, case label and size window.
    Classify(InputArgs),
    /// Search for a reducing subspace or certify indecomposability.
    Decompose(DecomposeArgs),
    /// Bring a single-eigenvalue pair into block form.
    Reduce(ReduceArgs),
    /// Generate, check and certify every family up to a rank bound.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub l1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub l2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b2: Option<String>,
    /// Comma-separated weights for a-upper.
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<String>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Pair documents; `-` reads stdin.
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    /// Comma-separated family names; all families by default.
    #[arg(long, value_delimiter = ',')]
    pub families: Option<Vec<String>>,
    /// JSONL file; records are appended.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Extra pair documents audited alongside the generated witnesses.
    #[arg(long)]
    pub extra: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// `--seed`, else `KREIN_SEED`, else the library default.
fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a, cli.format, out, err),
        Command::Verify(a) => commands::verify(a, cli.format, out),
        Command::Classify(a) => commands::classify(a, cli.format, out),
        Command::Decompose(a) => resolve_seed(a.seed).and_then(|seed| commands::decompose(a, seed, cli.format, out)),
        Command::Reduce(a) => commands::reduce(a, cli.format, out),
        Command::Audit(a) => resolve_seed(a.seed).and_then(|seed| audit::run(a, seed, cli.format, out, err)),
    };
    match result {
        Ok(Outcome::Pass) => EXIT_OK,
        Ok(Outcome::Fail) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
