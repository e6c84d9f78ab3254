use std::process::ExitCode;

use clap::Parser;
use curve_coreset_cli::{exit_code, run, Cli, Outcome};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CORESET_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::GateFailure) => {
            eprintln!("error: the size gate rejected this input; no coreset was built");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
