use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pillowcase_cli::{error_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e) as u8)
        }
    }
}
