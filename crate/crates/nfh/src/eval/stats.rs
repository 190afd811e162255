//! Corpus statistics: anchor frequencies, span lengths, digit/word ratio,
//! class distribution and reference-position breakdowns.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::{numbers, Example, Resolution};

#[derive(Debug, Clone, Serialize)]
pub struct AnchorFrequency {
    pub anchor: String,
    pub count: usize,
    pub percent: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferencePosition {
    /// Closest gold head sits before the anchor.
    pub before: usize,
    pub after: usize,
    /// Closest gold head shares the anchor's sentence.
    pub same_sentence: usize,
    pub other_sentence: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub n: usize,
    /// Most frequent anchors (lowercased), descending.
    pub anchor_frequencies: Vec<AnchorFrequency>,
    pub unique_anchors: usize,
    /// Span length -> count.
    pub span_length_histogram: BTreeMap<usize, usize>,
    pub digit_percent: f64,
    pub word_percent: f64,
    /// Label name -> percent, present when any example carries gold.
    pub class_distribution: BTreeMap<String, f64>,
    pub reference_positions: Option<ReferencePosition>,
}

/// Summarize a corpus (labeled or not).
pub fn corpus_stats(examples: &[Example]) -> StatsReport {
    let n = examples.len();
    let mut anchor_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut span_length_histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut digits = 0usize;
    let mut class_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut labeled = 0usize;
    let mut positions = ReferencePosition { before: 0, after: 0, same_sentence: 0, other_sentence: 0 };
    let mut any_reference = false;

    for ex in examples {
        *anchor_counts.entry(ex.anchor_text()).or_default() += 1;
        *span_length_histogram.entry(ex.anchor.len()).or_default() += 1;
        if numbers::span_is_digits(&ex.tokens, ex.anchor) {
            digits += 1;
        }
        if let Some(gold) = &ex.gold {
            labeled += 1;
            let label = match gold {
                Resolution::Implicit(c) => c.name().to_string(),
                Resolution::Reference { heads } => {
                    any_reference = true;
                    if let Some(&closest) = heads
                        .iter()
                        .min_by_key(|&&h| (ex.anchor.distance_to(h), h))
                    {
                        if closest < ex.anchor.start {
                            positions.before += 1;
                        } else {
                            positions.after += 1;
                        }
                        let same = ex.sentence_of(closest) == ex.sentence_of(ex.anchor.start);
                        if same {
                            positions.same_sentence += 1;
                        } else {
                            positions.other_sentence += 1;
                        }
                    }
                    "REFERENCE".to_string()
                }
            };
            *class_counts.entry(label).or_default() += 1;
        }
    }

    let pct = |count: usize, total: usize| {
        if total == 0 {
            0.0
        } else {
            100.0 * count as f64 / total as f64
        }
    };

    let mut anchor_frequencies: Vec<AnchorFrequency> = anchor_counts
        .iter()
        .map(|(anchor, &count)| AnchorFrequency {
            anchor: anchor.clone(),
            count,
            percent: pct(count, n),
        })
        .collect();
    anchor_frequencies.sort_by(|a, b| b.count.cmp(&a.count).then(a.anchor.cmp(&b.anchor)));

    StatsReport {
        n,
        unique_anchors: anchor_counts.len(),
        anchor_frequencies,
        span_length_histogram,
        digit_percent: pct(digits, n),
        word_percent: pct(n - digits, n),
        class_distribution: class_counts
            .into_iter()
            .map(|(k, v)| (k, pct(v, labeled)))
            .collect(),
        reference_positions: any_reference.then_some(positions),
    }
}
