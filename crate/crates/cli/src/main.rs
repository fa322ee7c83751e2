//! Command-line front end for the `stretched-schur` engine.
//!
//! Exit codes: 0 on success, 1 on a usage or input error, 2 when a checked
//! identity or prediction is refuted.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::{output_path, run};

const USAGE: u8 = 1;
const REFUTED: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return ExitCode::from(USAGE);
        }
    };
    let written = match output_path(&cli.command) {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    match outcome.refutation {
        Some(certificate) => {
            eprintln!("refuted: {certificate}");
            ExitCode::from(REFUTED)
        }
        None => ExitCode::SUCCESS,
    }
}
