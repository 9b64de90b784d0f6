use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = mmvib_cli::Cli::parse();
    match mmvib_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
