use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use specgap::cli::{execute, exit_code, render, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("SPECGAP_THREADS") {
        match v.parse::<usize>() {
            Ok(t) if t > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
                    eprintln!("specgap: cannot size thread pool: {e}");
                }
            }
            _ => {
                eprintln!("specgap: SPECGAP_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    let (report, error) = execute(&cli);
    if let Some(e) = &error {
        eprintln!("specgap: {e}");
    }
    let mut out = std::io::stdout().lock();
    if out.write_all(render(&report, cli.common.format).as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(exit_code(&report, error.as_ref()) as u8)
}
