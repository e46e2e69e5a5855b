use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lemniscate_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = report.render(&cli.global);
            if std::io::stdout().lock().write_all(out.as_bytes()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("lemniscate: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
