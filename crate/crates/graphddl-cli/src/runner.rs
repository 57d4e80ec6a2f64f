//! Catalog file handling and script execution.

use crate::{CliConfig, Mode};
use graphddl::catalog::{load_catalog, save_catalog};
use graphddl::token::Pos;
use graphddl::{tokenize, Catalog, Session, StatementStream, TypeKind};
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::os::unix::io::AsRawFd;
use std::path::Path;

/// Holds the advisory lock for the process lifetime.
pub struct CatalogLock {
    _file: File,
}

/// Takes an exclusive advisory lock next to the catalog file.
fn acquire_lock(catalog_path: &Path) -> Result<CatalogLock, String> {
    let mut lock_path = catalog_path.as_os_str().to_owned();
    lock_path.push(".lock");
    let file = OpenOptions::new()
        .create(true)
        .truncate(false)
        .write(true)
        .open(&lock_path)
        .map_err(|e| format!("cannot open lock file {:?}: {}", lock_path, e))?;
    let rc = unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_EX | libc::LOCK_NB) };
    if rc != 0 {
        return Err(format!(
            "catalog {:?} is locked by another process",
            catalog_path
        ));
    }
    Ok(CatalogLock { _file: file })
}

fn load_or_empty(path: &Path) -> Result<Catalog, String> {
    if !path.exists() {
        return Ok(Catalog::new());
    }
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    load_catalog(&text).map_err(|e| format!("catalog {}: {}", path.display(), e))
}

/// Writes the catalog atomically: temp file in the same directory,
/// then rename.
pub fn save_atomically(path: &Path, catalog: &Catalog) -> Result<(), String> {
    let text = save_catalog(catalog);
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = dir.unwrap_or(Path::new(".")).to_path_buf();
    tmp.push(format!(
        ".{}.tmp{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("catalog"),
        std::process::id()
    ));
    let write = (|| -> std::io::Result<()> {
        let mut file = File::create(&tmp)?;
        file.write_all(text.as_bytes())?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    write.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        format!("cannot write {}: {}", path.display(), e)
    })
}

pub fn run(config: &CliConfig) -> Result<u8, String> {
    let _lock = acquire_lock(&config.catalog_path)?;
    let catalog = load_or_empty(&config.catalog_path)?;
    match &config.mode {
        Mode::Script(path) => run_script(config, path, catalog, false),
        Mode::Check(path) => run_script(config, path, catalog, true),
        Mode::Repl => crate::repl::run(config, catalog),
    }
}

// ---- script segmentation ---------------------------------------------

/// A run of DDL lines or one meta-command line.
enum Segment<'a> {
    Ddl { start_line: usize, text: String },
    Meta { line_no: usize, text: &'a str },
}

const META_WORDS: [&str; 4] = ["describe", "list", "save", "quit"];

fn is_meta_line(trimmed: &str) -> bool {
    if let Some(rest) = trimmed.strip_prefix('\\') {
        return !rest.is_empty();
    }
    let first = trimmed.split_whitespace().next().unwrap_or("");
    META_WORDS.iter().any(|w| first.eq_ignore_ascii_case(w))
}

/// Paren depth change of one line, ignoring comments and string
/// literals. Used only to decide where statements can end.
pub fn paren_delta(line: &str) -> i32 {
    let mut delta = 0;
    let mut chars = line.chars();
    while let Some(c) = chars.next() {
        match c {
            '#' => break,
            '"' | '\u{201C}' | '\u{201D}' => {
                for next in chars.by_ref() {
                    let closes = if c == '"' {
                        next == '"'
                    } else {
                        next == '\u{201C}' || next == '\u{201D}'
                    };
                    if closes {
                        break;
                    }
                }
            }
            '(' => delta += 1,
            ')' => delta -= 1,
            _ => {}
        }
    }
    delta
}

fn segments(source: &str) -> Vec<Segment<'_>> {
    let mut out = Vec::new();
    let mut chunk: Option<(usize, String)> = None;
    let mut depth = 0i32;
    for (idx, line) in source.lines().enumerate() {
        let trimmed = line.trim();
        if depth <= 0 && is_meta_line(trimmed) {
            if let Some((start_line, text)) = chunk.take() {
                out.push(Segment::Ddl { start_line, text });
            }
            out.push(Segment::Meta {
                line_no: idx + 1,
                text: trimmed,
            });
            continue;
        }
        depth += paren_delta(line);
        match &mut chunk {
            Some((_, text)) => {
                text.push('\n');
                text.push_str(line);
            }
            None => chunk = Some((idx + 1, line.to_string())),
        }
    }
    if let Some((start_line, text)) = chunk.take() {
        out.push(Segment::Ddl { start_line, text });
    }
    out
}

// ---- meta-commands -----------------------------------------------------

pub enum MetaOutcome {
    Output(String),
    Save,
    Quit,
    Error(String),
}

pub fn execute_meta(line: &str, catalog: &Catalog) -> MetaOutcome {
    let stripped = line.trim().trim_start_matches('\\');
    let mut parts = stripped.split_whitespace();
    let command = parts.next().unwrap_or("").to_ascii_lowercase();
    let arg = parts.next();
    match command.as_str() {
        "describe" => match arg {
            None => MetaOutcome::Error("describe: missing name (or 'catalog')".to_string()),
            Some("catalog") => MetaOutcome::Output(catalog.describe_catalog()),
            Some(name) => match catalog.describe(name) {
                Some(text) => MetaOutcome::Output(text),
                None => MetaOutcome::Error(format!("describe: nothing named '{}'", name)),
            },
        },
        "list" => {
            let kind = match arg.and_then(TypeKind::parse) {
                Some(kind) => kind,
                None => {
                    return MetaOutcome::Error(
                        "list: expected vertex, edge, graph, or label".to_string(),
                    );
                }
            };
            MetaOutcome::Output(catalog.list(kind).join("\n") + "\n")
        }
        "save" => MetaOutcome::Save,
        "quit" => MetaOutcome::Quit,
        other => MetaOutcome::Error(format!("unknown command '{}'", other)),
    }
}

// ---- script / check ------------------------------------------------

fn run_script(
    config: &CliConfig,
    script_path: &Path,
    mut catalog: Catalog,
    check_mode: bool,
) -> Result<u8, String> {
    let source = fs::read_to_string(script_path)
        .map_err(|e| format!("cannot read {}: {}", script_path.display(), e))?;
    let label = script_path.display().to_string();
    let mut session = Session::new();
    let mut successes = 0usize;
    let mut failed = false;

    let diag = |line: usize, col: u32, message: &str| {
        eprintln!("{}:{}:{}: error: {}", label, line, col, message);
    };

    'outer: for segment in segments(&source) {
        match segment {
            Segment::Meta { line_no, text } => match execute_meta(text, &catalog) {
                MetaOutcome::Output(output) => print!("{}", output),
                MetaOutcome::Save => {
                    if check_mode {
                        println!("(check mode: not saved)");
                    } else {
                        save_atomically(&config.catalog_path, &catalog)?;
                    }
                }
                MetaOutcome::Quit => break 'outer,
                MetaOutcome::Error(message) => {
                    diag(line_no, 1, &message);
                    failed = true;
                    break 'outer;
                }
            },
            Segment::Ddl { start_line, text } => {
                let to_file_line = |pos: Pos| start_line + pos.line as usize - 1;
                let tokens = match tokenize(&text) {
                    Ok(tokens) => tokens,
                    Err(e) => {
                        diag(to_file_line(e.pos), e.pos.column, &e.message);
                        failed = true;
                        break 'outer;
                    }
                };
                for item in StatementStream::new(&tokens) {
                    match item {
                        Err(e) => {
                            diag(to_file_line(e.pos), e.pos.column, &e.message());
                            failed = true;
                            break 'outer;
                        }
                        Ok((stmt, pos)) => match catalog.execute(&stmt, &mut session) {
                            Ok(result) => {
                                let summary = result.summary();
                                if !summary.is_empty() {
                                    println!("{}", summary);
                                }
                                successes += 1;
                            }
                            Err(e) => {
                                diag(to_file_line(pos), pos.column, &e.to_string());
                                failed = true;
                                break 'outer;
                            }
                        },
                    }
                }
            }
        }
    }

    // persist through the last successful statement; a run that
    // executed nothing leaves the file untouched
    if !check_mode && successes > 0 {
        save_atomically(&config.catalog_path, &catalog)?;
    }
    Ok(if failed { 1 } else { 0 })
}
