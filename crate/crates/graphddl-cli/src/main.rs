//! Command-line front end: run DDL scripts or an interactive session
//! against a catalog file.
//!
//! Exit codes: 0 success, 1 language/semantic error, 2 I/O or usage
//! error.

mod repl;
mod runner;

use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: &str = "usage: graphddl --catalog <path> [--script <path>] [--check] [--repl]

  --catalog <path>  catalog file (created on first save if absent)
  --script <path>   run a DDL script against the catalog
  --check           parse and type-check the script without writing
  --repl            interactive session (default when no script)";

#[derive(Debug)]
pub struct CliConfig {
    pub catalog_path: PathBuf,
    pub mode: Mode,
}

#[derive(Debug)]
pub enum Mode {
    Script(PathBuf),
    Check(PathBuf),
    Repl,
}

fn parse_args(args: &[String]) -> Result<CliConfig, String> {
    let mut catalog = None;
    let mut script = None;
    let mut check = false;
    let mut repl = false;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--catalog" => {
                catalog = Some(PathBuf::from(
                    it.next().ok_or("--catalog requires a path")?,
                ));
            }
            "--script" => {
                script = Some(PathBuf::from(it.next().ok_or("--script requires a path")?));
            }
            "--check" => check = true,
            "--repl" => repl = true,
            "--help" | "-h" => return Err(String::new()),
            other => return Err(format!("unknown argument '{}'", other)),
        }
    }
    let catalog_path = catalog.ok_or("--catalog is required")?;
    let mode = match (script, check, repl) {
        (Some(path), true, false) => Mode::Check(path),
        (Some(path), false, false) => Mode::Script(path),
        (None, false, _) => Mode::Repl,
        (None, true, _) => return Err("--check requires --script".to_string()),
        (Some(_), _, true) => return Err("--repl cannot be combined with --script".to_string()),
    };
    Ok(CliConfig { catalog_path, mode })
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let config = match parse_args(&args) {
        Ok(config) => config,
        Err(message) => {
            if !message.is_empty() {
                eprintln!("error: {}", message);
            }
            eprintln!("{}", USAGE);
            return ExitCode::from(2);
        }
    };
    match runner::run(&config) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}
