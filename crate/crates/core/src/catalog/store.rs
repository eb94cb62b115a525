//! A catalog is a directory of brace files plus `index.txt`, one line per file.

use std::fs;
use std::path::{Path, PathBuf};

use super::entry::CatalogEntry;
use super::format::{parse_brace, serialize_brace};
use super::CatalogError;

pub const CATALOG_DIR_ENV: &str = "BRACE_CATALOG_DIR";
pub const DEFAULT_CATALOG_DIR: &str = "brace-catalog";
pub const INDEX_FILE: &str = "index.txt";

/// `$BRACE_CATALOG_DIR`, or `./brace-catalog` when unset.
pub fn default_catalog_dir() -> PathBuf {
    std::env::var_os(CATALOG_DIR_ENV).map_or_else(|| PathBuf::from(DEFAULT_CATALOG_DIR), PathBuf::from)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CatalogError + '_ {
    move |source| CatalogError::Io { path: path.to_path_buf(), source }
}

/// Writes the entries' files and merges their lines into the index.
/// Lines for other files already in the index are kept; the index is sorted by file name.
pub fn write_catalog(dir: &Path, entries: &[CatalogEntry]) -> Result<(), CatalogError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for e in entries {
        let path = dir.join(&e.file);
        let text = serialize_brace(&e.brace, &[format!("fingerprint {}", e.fingerprint)]);
        fs::write(&path, text).map_err(io_err(&path))?;
    }
    let index_path = dir.join(INDEX_FILE);
    let mut lines: Vec<String> = match fs::read_to_string(&index_path) {
        Ok(text) => text.lines().map(str::to_string).collect(),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(io_err(&index_path)(e)),
    };
    lines.retain(|l| {
        let file = l.split(' ').next().unwrap_or("");
        !entries.iter().any(|e| e.file == file)
    });
    lines.extend(entries.iter().map(CatalogEntry::index_line));
    lines.sort_by(|a, b| a.split(' ').next().cmp(&b.split(' ').next()));
    let mut text = lines.join("\n");
    text.push('\n');
    fs::write(&index_path, text).map_err(io_err(&index_path))
}

/// Reads every indexed file and recomputes its entry. Fails if a recomputed
/// index line differs from the stored one.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let index_path = dir.join(INDEX_FILE);
    let index = fs::read_to_string(&index_path).map_err(io_err(&index_path))?;
    let mut out = Vec::new();
    for line in index.lines().filter(|l| !l.trim().is_empty()) {
        let (file, _) = CatalogEntry::split_index_line(line)?;
        let path = dir.join(file);
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        let entry = CatalogEntry::new(file.to_string(), parse_brace(&text)?.brace)?;
        let recomputed = entry.index_line();
        if recomputed != line {
            return Err(CatalogError::IndexMismatch { stored: line.to_string(), recomputed });
        }
        out.push(entry);
    }
    Ok(out)
}
