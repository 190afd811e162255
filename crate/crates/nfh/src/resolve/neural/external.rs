//! Precomputed token-representation files.
//!
//! The encoder's input layer is pluggable: per-token vectors computed
//! offline (e.g. by a contextual language model) can stand in for the
//! word-plus-character encoding at inference time. The file is JSONL, one
//! object per example:
//!
//! ```json
//! {"id": "show/ep/x1", "vectors": [[0.1, -0.2, ...], ...]}
//! ```
//!
//! Rows are per token, in token order, and every row in the file shares
//! one dimension, which must equal the resolver's token input width.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;

use crate::{NfhError, Result};

#[derive(Deserialize)]
struct RawRow {
    id: String,
    vectors: Vec<Vec<f64>>,
}

/// Per-example token vectors keyed by example id.
#[derive(Debug, Clone)]
pub struct ExternalVectors {
    dimension: usize,
    rows: HashMap<String, Vec<Vec<f64>>>,
}

impl ExternalVectors {
    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| {
            NfhError::validation("vectors", format!("cannot open {}: {e}", path.display()))
        })?;
        let reader = std::io::BufReader::new(file);
        let mut dimension = None;
        let mut rows = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| NfhError::io(path.display().to_string(), e))?;
            if line.trim().is_empty() {
                continue;
            }
            let raw: RawRow = serde_json::from_str(&line)
                .map_err(|e| NfhError::format_at(i + 1, format!("bad vector record: {e}")))?;
            if raw.vectors.is_empty() {
                return Err(NfhError::format_at(i + 1, "example with no token vectors"));
            }
            for v in &raw.vectors {
                match dimension {
                    None => dimension = Some(v.len()),
                    Some(d) if d == v.len() => {}
                    Some(d) => {
                        return Err(NfhError::format_at(
                            i + 1,
                            format!("vector width {} differs from {d}", v.len()),
                        ))
                    }
                }
            }
            rows.insert(raw.id, raw.vectors);
        }
        let dimension =
            dimension.ok_or_else(|| NfhError::format("vector file has no records"))?;
        Ok(ExternalVectors { dimension, rows })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn rows(&self, id: &str) -> Option<&[Vec<f64>]> {
        self.rows.get(id).map(Vec::as_slice)
    }
}
