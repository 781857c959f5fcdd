mod args;
mod commands;
mod output;

use std::io;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Exit;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout().lock();
    let outcome = match &cli.command {
        Command::Eval(args) => commands::eval(args, stdout),
        Command::Compare(args) => commands::compare(args, stdout, io::stderr()),
        Command::Table(args) => commands::table(args, stdout),
        Command::Constants(args) => commands::constants(args, stdout),
        Command::List(args) => commands::list(args, stdout),
    };
    match outcome {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(err) => {
            eprintln!("error: {}", err.0);
            ExitCode::from(Exit::Invalid as u8)
        }
    }
}
