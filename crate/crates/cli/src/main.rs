use std::process::ExitCode;

use clap::Parser;
use hypvol_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_from(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hypvol: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hypvol: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
