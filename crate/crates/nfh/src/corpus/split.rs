//! Source-disjoint corpus splitting.
//!
//! Every example id encodes a source work as the prefix before the first
//! '/'; a split never separates examples of one source, so no movie or show
//! leaks across train/dev/test.

use std::collections::BTreeMap;

use super::Example;
use crate::rng::hash64;
use crate::{NfhError, Result};

/// Partition examples into splits with the given ratios.
///
/// Greedy assignment: sources ordered by example count (largest first, ties
/// broken by a seeded hash of the source key) each go to the split with the
/// largest remaining deficit against its target size. Deterministic for a
/// given seed.
pub fn partition_by_source(
    examples: &[Example],
    ratios: &[f64],
    seed: u64,
) -> Result<Vec<Vec<Example>>> {
    if ratios.is_empty() {
        return Err(NfhError::Data("no split ratios given".into()));
    }
    if ratios.iter().any(|&r| r <= 0.0) {
        return Err(NfhError::Data("split ratios must be positive".into()));
    }

    // Group by source; BTreeMap for input-order independence.
    let mut by_source: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, ex) in examples.iter().enumerate() {
        by_source.entry(ex.source_key()).or_default().push(i);
    }
    if by_source.len() < ratios.len() {
        return Err(NfhError::Data(format!(
            "{} sources cannot fill {} splits",
            by_source.len(),
            ratios.len()
        )));
    }

    let total: f64 = ratios.iter().sum();
    let targets: Vec<f64> = ratios
        .iter()
        .map(|r| r / total * examples.len() as f64)
        .collect();

    let mut sources: Vec<(&str, &Vec<usize>)> = by_source.iter().map(|(k, v)| (*k, v)).collect();
    sources.sort_by(|a, b| {
        b.1.len()
            .cmp(&a.1.len())
            .then_with(|| hash64(seed, a.0.as_bytes()).cmp(&hash64(seed, b.0.as_bytes())))
    });

    let mut splits: Vec<Vec<Example>> = vec![Vec::new(); ratios.len()];
    let mut counts = vec![0usize; ratios.len()];
    for (_, indices) in sources {
        let pick = (0..ratios.len())
            .max_by(|&a, &b| {
                let da = targets[a] - counts[a] as f64;
                let db = targets[b] - counts[b] as f64;
                da.partial_cmp(&db)
                    .unwrap()
                    .then_with(|| b.cmp(&a)) // tie: earlier split wins
            })
            .unwrap();
        counts[pick] += indices.len();
        for &i in indices {
            splits[pick].push(examples[i].clone());
        }
    }
    Ok(splits)
}
