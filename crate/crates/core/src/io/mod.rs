//! File formats and run reports.

pub mod fpnc;
mod generate;
mod report;

use std::path::Path;

pub use generate::{generate, sparse_count, GenMode};
pub use report::RunReport;

use crate::error::Result;
use crate::patterns::{Pattern, PatternDoc};

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let doc: PatternDoc = serde_json::from_str(text)?;
    Pattern::from_doc(&doc)
}

pub fn read_pattern(path: impl AsRef<Path>) -> Result<Pattern> {
    parse_pattern(&std::fs::read_to_string(path)?)
}

/// Compact JSON with keys in the order p, r, forms, colourings.
pub fn pattern_json(pat: &Pattern) -> Result<String> {
    Ok(serde_json::to_string(&pat.to_doc()?)?)
}
