//! Brace files, the on-disk catalog and exhaustive enumeration.

pub mod entry;
pub mod enumerate;
pub mod format;
pub mod store;

use std::path::PathBuf;

use thiserror::Error;

use crate::brace::Chirality;
use crate::error::BraceError;

pub use entry::{CatalogEntry, Invariants};
pub use enumerate::{enumerate_brace_tables, EnumerationConfig};
pub use format::{parse_brace, parse_solution, serialize_brace, serialize_solution, BraceFile};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error("index line does not match the file:\n  stored:     {stored}\n  recomputed: {recomputed}")]
    IndexMismatch { stored: String, recomputed: String },
}

/// File name of the `k`-th brace of an enumeration run.
pub fn entry_file_name(order: usize, chirality: Chirality, k: usize) -> String {
    format!("o{order:02}-{chirality}-{k:03}.brace")
}

/// One catalog entry per isomorphism class of braces of `order`, in a
/// deterministic order, with the default bound.
pub fn enumerate_braces(order: usize, chirality: Chirality) -> Result<Vec<CatalogEntry>, BraceError> {
    enumerate_braces_with(order, chirality, &EnumerationConfig::default())
}

pub fn enumerate_braces_with(
    order: usize,
    chirality: Chirality,
    config: &EnumerationConfig,
) -> Result<Vec<CatalogEntry>, BraceError> {
    enumerate_brace_tables(order, chirality, config)?
        .into_iter()
        .enumerate()
        .map(|(k, b)| CatalogEntry::new(entry_file_name(order, chirality, k), b))
        .collect()
}
