mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Command, RunConfig};
use commands::{CliError, Outcome};

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Verify(a) => Ok(commands::verify(a)),
        Command::Mott(a) => commands::mott(a),
        Command::Uehling(a) => commands::uehling(a),
        Command::G2(a) => commands::g2(a),
        Command::Anomaly(a) => Ok(commands::anomaly(a)),
        Command::PropagateDemo(a) => commands::propagate_demo(a),
    }
}

fn emit(config: &RunConfig, text: &str) -> std::io::Result<()> {
    match &config.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let result = dispatch(&config.command).and_then(|outcome| {
        emit(&config, &outcome.text)?;
        outcome.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
