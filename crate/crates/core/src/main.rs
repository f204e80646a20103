use std::process::ExitCode;

use clap::Parser;
use skewbrace::cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::for_error(&e).code());
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &report.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::InputError.code());
            }
        }
        None => print!("{}", report.output),
    }
    ExitCode::from(report.status.code())
}
