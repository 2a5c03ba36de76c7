use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deodhar_core::root_weyl::{build_root_system, RootSystem};
use deodhar_core::Error;

mod decompose;
mod predict;
mod render;
mod verify;

#[derive(Parser, Debug)]
#[command(name = "deodhar", version, about = "Deodhar cells, R-polynomials and Deligne-Lusztig piece predictions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distinguished subexpressions of a reduced word ending at v, in filtration order.
    Decompose(decompose::DecomposeArgs),
    /// Run a verification suite; exit 0 iff every compared pair matches.
    Verify(verify::VerifyArgs),
    /// Predicted e_psi-part of every piece Y_x(w).
    Predict(predict::PredictArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Cartan type letter (A, B, C, D, G).
    #[arg(value_name = "TYPE")]
    pub type_label: char,
    pub rank: usize,
}

impl SystemArgs {
    pub fn system(&self) -> Result<RootSystem, CliError> {
        Ok(build_root_system(self.type_label.to_ascii_uppercase(), self.rank)?)
    }
}

/// Everything that ends a run early, with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Config(String),
    #[error("output failed: {0}")]
    Output(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        match e.io_error_kind() {
            Some(kind) => CliError::Io(kind.into()),
            None => CliError::Output(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Output(format!("{other:?}")),
        }
    }
}

fn configure_workers() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("DEODHAR_WORKERS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("DEODHAR_WORKERS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_workers().and_then(|()| match cli.command {
        Command::Decompose(args) => decompose::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Predict(args) => predict::run(&args),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
