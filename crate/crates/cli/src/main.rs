//! `tdpp` command-line runner.

mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_INPUT),
            };
        }
    };
    let result = match &cli.command {
        Command::Route(a) => commands::route(a),
        Command::Experiment(a) => commands::experiment(a),
        Command::Validate(a) => commands::validate(a),
        Command::DemoFig3(a) => commands::demo_fig3(a),
        Command::DemoPump(a) => commands::demo_pump(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
