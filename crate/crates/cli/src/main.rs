mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// How a run ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Outcome {
    Pass,
    /// A check ran and did not hold.
    Fail,
}

/// A failure before or outside of verification: bad flags, bad input, I/O.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] momlat_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Check(a) => commands::check(a),
        Command::Eigvec(a) => commands::eigvec(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Continuum(a) => commands::continuum(a),
        Command::Well(a) => commands::well(a),
        Command::Apply(a) => commands::apply(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
