//! `detfactor`: factor integers or benchmark the factoring engine.

mod bench;
mod factor;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit status for malformed input or bad flags.
pub const EXIT_USAGE: u8 = 2;
/// Exit status when a search exceeds its size limit.
pub const EXIT_LIMIT: u8 = 3;
/// Exit status for a failed self-check.
pub const EXIT_INTERNAL: u8 = 1;

#[derive(Parser)]
#[command(
    name = "detfactor",
    version,
    about = "Deterministic integer factorisation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor integers given as arguments, or one per line on stdin.
    Factor(factor::FactorArgs),
    /// Factor seeded random balanced semiprimes and report CSV timings.
    Bench(bench::BenchArgs),
}

/// A failure carrying its exit status.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn from_core(n: &detfactor::BigUint, err: detfactor::Error) -> Failure {
        let code = match err {
            detfactor::Error::SearchLimit { .. } => EXIT_LIMIT,
            detfactor::Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: format!("{n}: {err}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Factor(args) => factor::run(&args),
        Command::Bench(args) => bench::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
