//! Report envelope and atomic output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Budgets {
    pub grid_samples: usize,
    pub refine_rounds: usize,
    pub link_candidates: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub budgets: Budgets,
    /// All arithmetic is exact; kept for readers that check it.
    pub exact: bool,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    run: &'a RunConfig,
    result: &'a T,
}

pub fn render<T: Serialize>(command: &str, run: &RunConfig, result: &T) -> CliResult<String> {
    let env = Envelope { tool: "two-convex-lab", version: env!("CARGO_PKG_VERSION"), command, run, result };
    let mut text = serde_json::to_string_pretty(&env).map_err(|e| CliError::validation(format!("serializing report: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Write through a sibling temporary file and rename over the target.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::precondition(format!("writing {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| CliError::precondition(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

pub fn emit(text: &str, json_out: Option<&Path>) -> CliResult<()> {
    match json_out {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
