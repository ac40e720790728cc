use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use linkforge_cli::{run, RunConfig, Status};

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("LINKFORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("LINKFORGE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("{msg}");
        return ExitCode::from(2);
    }
    let outcome = run(&cfg);
    let mut status = outcome.status;
    if let Some(text) = &outcome.artifact {
        let written = match &cfg.output {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
            }
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| e.to_string()),
        };
        if let Err(msg) = written {
            eprintln!("{msg}");
            status = Status::Error;
        }
    }
    eprintln!("{}", outcome.summary);
    ExitCode::from(status.exit_code())
}
