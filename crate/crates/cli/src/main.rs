//! `robarch`: ARCH tests robust to conditional-mean misspecification.

mod config;
mod experiment;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "robarch",
    version,
    about = "ARCH tests robust to mean misspecification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo experiment described by a JSON config (or a run manifest).
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the configured replication count.
        #[arg(long)]
        reps: Option<usize>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Test a series read from CSV for ARCH effects.
    Test {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelFlag::T3)]
        model: ModelFlag,
        #[arg(long, default_value_t = 2)]
        lags: usize,
        #[arg(long, default_value_t = 1)]
        arch_lag: usize,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Write a simulated sample path as a `t,y` CSV.
    Simulate {
        #[arg(long)]
        dgp: String,
        #[arg(long = "T")]
        t: usize,
        #[arg(long, default_value_t = 0.0)]
        gamma1: f64,
        #[arg(long, env = "ROBARCH_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModelFlag {
    Ar,
    T2,
    T3,
    NpPl,
    NpCv,
}

/// An error with its process exit code: 1 for a failed run, 2 for bad usage or input.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn input(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 2,
            error: error.into(),
        }
    }

    pub fn run(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 1,
            error: error.into(),
        }
    }
}

/// Classifies a library error: malformed requests are input errors, the rest run failures.
pub fn from_core(error: robarch::Error) -> Failure {
    use robarch::Error as E;
    match error {
        E::InvalidInput(_)
        | E::DimensionMismatch(_)
        | E::InsufficientData { .. }
        | E::UnknownPreset(_)
        | E::ModelParse(_)
        | E::NonStationary(_) => Failure::input(error),
        _ => Failure::run(error),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Experiment {
            config,
            out,
            reps,
            workers,
        } => experiment::run(&config, &out, reps, workers),
        Command::Test {
            input,
            model,
            lags,
            arch_lag,
            level,
            json,
        } => series_test::run(&input, model, lags, arch_lag, level, json),
        Command::Simulate {
            dgp,
            t,
            gamma1,
            seed,
            out,
        } => simulate::run(&dgp, t, gamma1, seed, &out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
