use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use semilin::cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match execute(&cli, &mut std::io::stdin()) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text),
        None => std::io::stdout().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.status != 0 {
        eprintln!("verification failed");
    }
    ExitCode::from(out.status as u8)
}
