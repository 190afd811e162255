//! Word-vector table loaded from the plain-text format
//! `word f1 f2 ... fd`, one entry per line.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::{NfhError, Result};

/// Fixed-dimension word vectors with an unknown-word fallback.
///
/// The unknown vector is the componentwise mean of the whole vocabulary.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dimension: usize,
    words: Vec<String>,
    index: HashMap<String, usize>,
    /// Row-major `words.len() x dimension`.
    vectors: Vec<f64>,
    unk: Vec<f64>,
}

impl EmbeddingTable {
    pub fn new(entries: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let Some(dimension) = entries.first().map(|(_, v)| v.len()) else {
            return Err(NfhError::format("embedding table is empty"));
        };
        let mut words = Vec::with_capacity(entries.len());
        let mut index = HashMap::with_capacity(entries.len());
        let mut vectors = Vec::with_capacity(entries.len() * dimension);
        let mut unk = vec![0.0; dimension];
        for (row, (word, vec)) in entries.into_iter().enumerate() {
            if vec.len() != dimension {
                return Err(NfhError::format(format!(
                    "embedding for `{word}` has width {} but the table width is {dimension}",
                    vec.len()
                )));
            }
            for (u, v) in unk.iter_mut().zip(&vec) {
                *u += v;
            }
            index.insert(word.clone(), row);
            words.push(word);
            vectors.extend(vec);
        }
        let count = words.len() as f64;
        for u in &mut unk {
            *u /= count;
        }
        Ok(EmbeddingTable { dimension, words, index, vectors, unk })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn unk_vector(&self) -> &[f64] {
        &self.unk
    }

    /// Vector for `word`; unknown words get the mean vector.
    pub fn lookup(&self, word: &str) -> &[f64] {
        match self.index.get(word) {
            Some(&row) => &self.vectors[row * self.dimension..(row + 1) * self.dimension],
            None => &self.unk,
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }
}

/// Load a table from the textual vector format.
pub fn load_embeddings(path: &Path) -> Result<EmbeddingTable> {
    let file = std::fs::File::open(path).map_err(|e| {
        NfhError::validation("embeddings", format!("cannot open {}: {e}", path.display()))
    })?;
    let reader = std::io::BufReader::new(file);
    let mut entries = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| NfhError::io(path.display().to_string(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let word = parts.next().unwrap().to_string();
        let vec: Vec<f64> = parts
            .map(|p| {
                p.parse::<f64>().map_err(|_| {
                    NfhError::format_at(i + 1, format!("bad float `{p}` in embedding file"))
                })
            })
            .collect::<Result<_>>()?;
        if vec.is_empty() {
            return Err(NfhError::format_at(i + 1, "embedding row has no values"));
        }
        entries.push((word, vec));
    }
    EmbeddingTable::new(entries).map_err(|e| match e {
        NfhError::Format { msg, .. } => NfhError::format(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn table(rows: &[(&str, &[f64])]) -> EmbeddingTable {
        EmbeddingTable::new(
            rows.iter()
                .map(|(w, v)| (w.to_string(), v.to_vec()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn loads_two_word_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "cat 1 0 0").unwrap();
        writeln!(f, "dog 0 1 0").unwrap();
        let t = load_embeddings(f.path()).unwrap();
        assert_eq!(t.dimension(), 3);
        assert_eq!(t.len(), 2);
        assert_eq!(t.lookup("cat"), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn unknown_word_gets_mean() {
        let t = table(&[("a", &[1.0, 0.0, 0.0]), ("b", &[0.0, 1.0, 0.0])]);
        assert_eq!(t.lookup("zzz"), &[0.5, 0.5, 0.0]);
        assert_eq!(t.unk_vector(), &[0.5, 0.5, 0.0]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "cat 1 0 0").unwrap();
        writeln!(f, "dog 0 1").unwrap();
        assert!(load_embeddings(f.path()).is_err());
    }

    #[test]
    fn empty_file_rejected() {
        let f = tempfile::NamedTempFile::new().unwrap();
        assert!(load_embeddings(f.path()).is_err());
    }
}
