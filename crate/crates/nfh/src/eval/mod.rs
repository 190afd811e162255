//! Metrics, noun baselines, the linear resolution baseline and corpus
//! statistics.

pub mod baselines;
pub mod stats;

pub use baselines::{
    extract_linear_resolution_features, noun_baseline, noun_baseline_accuracies, LinearResolver,
    NounStrategy,
};
pub use stats::{corpus_stats, StatsReport};

use serde::Serialize;

use crate::corpus::{Example, Resolution};
use crate::{NfhError, Result};

/// Gold-side labels: the six implicit classes then REFERENCE.
pub const GOLD_LABELS: [&str; 7] = [
    "YEAR", "AGE", "CURRENCY", "PEOPLE", "TIME", "OTHER", "REFERENCE",
];

/// Prediction-side labels add REF-WRONG: a Reference pick whose token is
/// not a gold head.
pub const PRED_LABELS: [&str; 8] = [
    "YEAR", "AGE", "CURRENCY", "PEOPLE", "TIME", "OTHER", "REFERENCE", "REF-WRONG",
];

const REFERENCE_ROW: usize = 6;
const REF_WRONG_COL: usize = 7;

/// The three accuracies and the 7x8 confusion matrix.
///
/// Head accuracy requires the exact head (implicit class match, or a
/// predicted reference token whose lemma is in the gold head-lemma set);
/// categorical accuracy collapses all Reference picks into one label;
/// binary accuracy only separates Reference from Implicit. By construction
/// head <= categorical <= binary.
#[derive(Debug, Clone, Serialize)]
pub struct Metrics {
    pub n: usize,
    pub head_accuracy: f64,
    pub categorical_accuracy: f64,
    pub binary_accuracy: f64,
    /// Rows: gold label in [`GOLD_LABELS`] order; columns: predicted label
    /// in [`PRED_LABELS`] order.
    pub confusion: [[usize; 8]; 7],
}

impl Metrics {
    /// Per-class precision/recall over the categorical decision. REF-WRONG
    /// predictions count as REFERENCE picks for precision.
    pub fn per_class(&self) -> Vec<ClassReport> {
        let mut out = Vec::with_capacity(7);
        for (row, label) in GOLD_LABELS.iter().enumerate() {
            let gold_total: usize = self.confusion[row].iter().sum();
            let mut pred_total = 0usize;
            let mut hit = 0usize;
            for r in 0..7 {
                for c in 0..8 {
                    let col_label = if c == REF_WRONG_COL { REFERENCE_ROW } else { c };
                    if col_label == row {
                        pred_total += self.confusion[r][c];
                        if r == row {
                            hit += self.confusion[r][c];
                        }
                    }
                }
            }
            out.push(ClassReport {
                label,
                precision: ratio(hit, pred_total),
                recall: ratio(hit, gold_total),
                gold_count: gold_total,
            });
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub label: &'static str,
    pub precision: f64,
    pub recall: f64,
    pub gold_count: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn gold_label_index(gold: &Resolution) -> usize {
    match gold {
        Resolution::Implicit(c) => c.index(),
        Resolution::Reference { .. } => REFERENCE_ROW,
    }
}

/// Exact-head correctness: implicit classes must match; a reference pick is
/// correct when its token's lemma appears among the gold heads' lemmas.
pub fn head_correct(example: &Example, pred: &Resolution, gold: &Resolution) -> bool {
    match (pred, gold) {
        (Resolution::Implicit(p), Resolution::Implicit(g)) => p == g,
        (Resolution::Reference { heads: pred_heads }, Resolution::Reference { heads: gold_heads }) => {
            let Some(&p) = pred_heads.first() else { return false };
            if p >= example.tokens.len() {
                return false;
            }
            let pred_lemma = &example.tokens[p].lemma;
            gold_heads
                .iter()
                .any(|&g| g < example.tokens.len() && &example.tokens[g].lemma == pred_lemma)
        }
        _ => false,
    }
}

/// Score aligned predictions against gold-labeled examples.
pub fn evaluate(examples: &[Example], predictions: &[Resolution]) -> Result<Metrics> {
    if examples.len() != predictions.len() {
        return Err(NfhError::Data(format!(
            "{} predictions for {} gold examples",
            predictions.len(),
            examples.len()
        )));
    }
    let mut head_hits = 0usize;
    let mut cat_hits = 0usize;
    let mut bin_hits = 0usize;
    let mut confusion = [[0usize; 8]; 7];
    let mut n = 0usize;

    for (ex, pred) in examples.iter().zip(predictions) {
        let Some(gold) = &ex.gold else {
            return Err(NfhError::Data(format!("example `{}` has no gold label", ex.id)));
        };
        n += 1;
        let head_ok = head_correct(ex, pred, gold);
        let cat_ok = match (pred, gold) {
            (Resolution::Implicit(p), Resolution::Implicit(g)) => p == g,
            (Resolution::Reference { .. }, Resolution::Reference { .. }) => true,
            _ => false,
        };
        let bin_ok = pred.is_reference() == gold.is_reference();

        head_hits += head_ok as usize;
        cat_hits += cat_ok as usize;
        bin_hits += bin_ok as usize;

        let row = gold_label_index(gold);
        let col = match pred {
            Resolution::Implicit(c) => c.index(),
            Resolution::Reference { .. } => {
                if head_ok {
                    REFERENCE_ROW
                } else {
                    REF_WRONG_COL
                }
            }
        };
        confusion[row][col] += 1;
    }

    Ok(Metrics {
        n,
        head_accuracy: ratio(head_hits, n),
        categorical_accuracy: ratio(cat_hits, n),
        binary_accuracy: ratio(bin_hits, n),
        confusion,
    })
}

/// Confusion matrix as CSV with labeled header and row names.
pub fn confusion_csv(metrics: &Metrics) -> String {
    let mut out = String::from("gold");
    for label in PRED_LABELS {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    for (row, label) in GOLD_LABELS.iter().enumerate() {
        out.push_str(label);
        for c in 0..8 {
            out.push(',');
            out.push_str(&metrics.confusion[row][c].to_string());
        }
        out.push('\n');
    }
    out
}
