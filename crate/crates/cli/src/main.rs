//! `octacover`: batch front-end for the octacover toolkit.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Context, Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters; exit code 2.
    Invalid(String),
    /// The computation itself failed; exit code 1.
    Failed(String),
}

impl From<octacover_core::Error> for CliError {
    fn from(e: octacover_core::Error) -> Self {
        use octacover_core::Error::*;
        match e {
            Domain(_) | SizeGuard(_) | Parse(_) | Truncation { .. } | UnknownEdge(_) => {
                CliError::Invalid(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "octacover",
    version,
    about = "Group arithmetic, scattering checks, orbit growth and random covers"
)]
struct Cli {
    /// RNG seed; required by stochastic subcommands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON run configuration; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact checks on the standard generators and the octahedral group.
    VerifyGroup(commands::verify::Args),
    /// Scattering coefficient formula against the lattice oracle, plus a pole scan.
    Scattering(commands::scattering::Args),
    /// Orbit ball and critical exponent estimate.
    Delta(commands::delta::Args),
    /// Random cover sampling, gaps, 2-lifts and switching walks.
    Cover(commands::cover::Args),
    /// Main bounds, flattening budgets, cap volume sweep and horoball check.
    Bounds(commands::bounds::Args),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyGroup(_) => "verify-group",
            Command::Scattering(_) => "scattering",
            Command::Delta(_) => "delta",
            Command::Cover(_) => "cover",
            Command::Bounds(_) => "bounds",
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let name = cli.command.name();
    if let Some(c) = &cfg.command {
        if c != name {
            return Err(CliError::Invalid(format!(
                "config is for '{c}', not '{name}'"
            )));
        }
    }
    let ctx = Context {
        seed: cli.seed.or(cfg.seed),
        format: cli.format.or(cfg.format).unwrap_or_default(),
        out: cli.out.or(cfg.out),
    };
    let params = cfg.params.as_ref();
    let report = match &cli.command {
        Command::VerifyGroup(a) => commands::verify::run(&config::merge_params(a, params)?, &ctx)?,
        Command::Scattering(a) => {
            commands::scattering::run(&config::merge_params(a, params)?, &ctx)?
        }
        Command::Delta(a) => commands::delta::run(&config::merge_params(a, params)?, &ctx)?,
        Command::Cover(a) => commands::cover::run(&config::merge_params(a, params)?, &ctx)?,
        Command::Bounds(a) => commands::bounds::run(&config::merge_params(a, params)?, &ctx)?,
    };
    output::emit(name, report, &ctx)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
