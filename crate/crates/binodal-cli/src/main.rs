//! Command-line front end: configures a material, runs each computation,
//! and emits figure-ready CSV/JSON tables plus a summary.json per run.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "binodal",
    version,
    about = "Jump sets, binodal bounds and quasiconvex envelopes of 2D two-phase Hadamard materials"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Shear modulus
    #[arg(long, global = true)]
    mu: Option<f64>,

    /// Low well of the determinant potential
    #[arg(long, global = true)]
    d1: Option<f64>,

    /// High well of the determinant potential
    #[arg(long, global = true)]
    d2: Option<f64>,

    /// Sample count for curves and scans
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Output directory
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Table format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// TOML config file (flags take precedence over it)
    #[arg(long, global = true, value_name = "PATH.toml")]
    config: Option<PathBuf>,

    /// Shear-modulus sweep as start:stop:step
    #[arg(long = "mu-sweep", global = true, value_name = "START:STOP:STEP")]
    mu_sweep: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Jump-set curve, convexification hyperbolas and W-points
    Jumpset,
    /// Secondary jump set, numeric and asymptotic, with its mirror branch
    Secondary,
    /// Circular-nucleus profile and the far-field stretch sweep
    Nucleus,
    /// Quasiconvex envelope along hydrostatic strains
    Qw,
    /// Polyconvexity scan, bounds and thresholds on the bisector
    Pcx,
    /// Two-sided binodal bounds: outer nucleation curves vs inner laminate curves
    Binodal,
}

/// Failures split by exit code: bad configuration (2) vs numerics (3).
#[derive(Debug)]
pub enum AppError {
    Config(String),
    Numeric(hadamard::Error),
}

impl From<hadamard::Error> for AppError {
    fn from(e: hadamard::Error) -> Self {
        match e {
            hadamard::Error::InvalidParams(msg) => AppError::Config(msg),
            other => AppError::Numeric(other),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Config(format!("i/o failure: {e}"))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("BINODAL_LOG", "warn"),
    )
    .format_timestamp(None)
    .init();

    let cli = Cli::parse();
    let cfg = match config::RunConfig::resolve(&cli) {
        Ok(cfg) => cfg,
        Err(AppError::Config(msg)) => {
            eprintln!("config error: {msg}");
            return ExitCode::from(2);
        }
        Err(AppError::Numeric(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };

    let run = match cli.command {
        Command::Jumpset => commands::jumpset::run(&cfg),
        Command::Secondary => commands::secondary::run(&cfg),
        Command::Nucleus => commands::nucleus::run(&cfg),
        Command::Qw => commands::qw::run(&cfg),
        Command::Pcx => commands::pcx::run(&cfg),
        Command::Binodal => commands::binodal::run(&cfg),
    };

    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Numeric(e)) => {
            eprintln!("numerical failure: {e}");
            ExitCode::from(3)
        }
    }
}
