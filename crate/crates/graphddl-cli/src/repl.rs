//! Interactive session: one statement or meta-command per submission.
//!
//! Statements may span lines while a parenthesis is open; the session
//! scope set by USE GRAPH lives only for the session. No meta-command
//! writes the catalog file except `\save`.

use crate::runner::{execute_meta, paren_delta, save_atomically, MetaOutcome};
use crate::CliConfig;
use graphddl::{tokenize, Catalog, Session, StatementStream};
use std::io::{BufRead, IsTerminal, Write};

pub fn run(config: &CliConfig, mut catalog: Catalog) -> Result<u8, String> {
    let stdin = std::io::stdin();
    let interactive = stdin.is_terminal();
    let mut session = Session::new();
    let mut buffer = String::new();
    let mut depth = 0i32;

    let prompt = |continuation: bool| {
        if interactive {
            let text = if continuation { "...> " } else { "ddl> " };
            eprint!("{}", text);
            let _ = std::io::stderr().flush();
        }
    };

    prompt(false);
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| format!("stdin: {}", e))?;
        let trimmed = line.trim();

        if buffer.is_empty() && depth <= 0 && is_meta(trimmed) {
            match execute_meta(trimmed, &catalog) {
                MetaOutcome::Output(output) => print!("{}", output),
                MetaOutcome::Save => {
                    save_atomically(&config.catalog_path, &catalog)?;
                    println!("saved {}", config.catalog_path.display());
                }
                MetaOutcome::Quit => return Ok(0),
                MetaOutcome::Error(message) => eprintln!("error: {}", message),
            }
            prompt(false);
            continue;
        }

        depth += paren_delta(&line);
        if !buffer.is_empty() {
            buffer.push('\n');
        }
        buffer.push_str(&line);
        if depth > 0 {
            prompt(true);
            continue;
        }

        submit(&buffer, &mut catalog, &mut session);
        buffer.clear();
        depth = 0;
        prompt(false);
    }
    if !buffer.trim().is_empty() {
        submit(&buffer, &mut catalog, &mut session);
    }
    Ok(0)
}

fn is_meta(trimmed: &str) -> bool {
    if trimmed.starts_with('\\') {
        return true;
    }
    let first = trimmed.split_whitespace().next().unwrap_or("");
    ["describe", "list", "save", "quit"]
        .iter()
        .any(|w| first.eq_ignore_ascii_case(w))
}

/// Parses and executes every statement in one submission. Errors are
/// reported per statement; the session continues.
fn submit(source: &str, catalog: &mut Catalog, session: &mut Session) {
    let tokens = match tokenize(source) {
        Ok(tokens) => tokens,
        Err(e) => {
            eprintln!("repl:{}: error: {}", e.pos, e.message);
            return;
        }
    };
    for item in StatementStream::new(&tokens) {
        match item {
            Err(e) => {
                eprintln!("repl:{}: error: {}", e.pos, e.message());
                return;
            }
            Ok((stmt, pos)) => match catalog.execute(&stmt, session) {
                Ok(result) => {
                    let summary = result.summary();
                    if !summary.is_empty() {
                        println!("{}", summary);
                    }
                }
                Err(e) => eprintln!("repl:{}: error: {}", pos, e),
            },
        }
    }
}
