mod cache;
mod cli;
mod commands;
mod errors;
mod ingest;
mod orders;
mod report;
mod scenarios;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::cli::{Cli, Command};

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(3)
                }
            };
        }
    };

    let result = match &parsed.command {
        Command::KSample(args) => commands::cmd_k_sample(args),
        Command::OneSample(args) => commands::cmd_one_sample(args),
        Command::Critvals(args) => commands::cmd_critvals(args),
        Command::Power(args) => commands::cmd_power(args),
        Command::Survcurves(args) => commands::cmd_survcurves(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
