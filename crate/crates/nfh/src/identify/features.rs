//! Feature templates for the learned FH/not-FH classifier.
//!
//! Four template families over an anchor span:
//!
//! * T1 — concatenated (lowercased) anchor tokens;
//! * T2 — lowercased tokens in a 3-token window, positional, padded;
//! * T3 — POS tags in the same window, positional, padded;
//! * T4 — POS tag of the anchor's syntactic head.
//!
//! Features hash into a fixed space (default 2^22) with FNV-1a followed by
//! a multiply-shift, so extraction is deterministic and memory-bounded.

use crate::corpus::{AnchorSpan, Example};

/// Hash-space width exponent used when none is configured.
pub const DEFAULT_HASH_BITS: u32 = 22;

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;
/// Odd multiplier for the multiply-shift (2^64 divided by the golden ratio).
const MULTIPLY_SHIFT: u64 = 0x9e3779b97f4a7c15;

/// Which template families to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ablation {
    #[default]
    Full,
    /// Drop T4 (head POS).
    NoDep,
    /// Drop T3 (window POS).
    NoPos,
    /// Drop both T3 and T4.
    NoDepPos,
}

impl Ablation {
    pub fn keeps_window_pos(&self) -> bool {
        matches!(self, Ablation::Full | Ablation::NoDep)
    }

    pub fn keeps_head_pos(&self) -> bool {
        matches!(self, Ablation::Full | Ablation::NoPos)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Ablation::Full => "full",
            Ablation::NoDep => "-dep",
            Ablation::NoPos => "-pos",
            Ablation::NoDepPos => "-dep-pos",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "full" => Some(Ablation::Full),
            "-dep" => Some(Ablation::NoDep),
            "-pos" => Some(Ablation::NoPos),
            "-dep-pos" | "-dep,-pos" => Some(Ablation::NoDepPos),
            _ => None,
        }
    }
}

/// Sparse binary feature vector: sorted, deduplicated hashed indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureVector {
    pub indices: Vec<u32>,
}

impl FeatureVector {
    pub fn from_strings<'a>(features: impl Iterator<Item = &'a str>, bits: u32) -> Self {
        let mut indices: Vec<u32> = features.map(|f| hash_feature(f, bits)).collect();
        indices.sort_unstable();
        indices.dedup();
        FeatureVector { indices }
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h = FNV_OFFSET;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Map a feature string into [0, 2^bits).
pub fn hash_feature(s: &str, bits: u32) -> u32 {
    (fnv1a(s).wrapping_mul(MULTIPLY_SHIFT) >> (64 - bits)) as u32
}

const PAD: &str = "<pad>";
const ROOT: &str = "<root>";

/// Raw (unhashed) feature strings for a span; shared by extraction and
/// tests that inspect templates.
///
/// Identification is a per-sentence decision, so the windows clip at the
/// anchor's sentence boundaries: features are invariant under prepending
/// or appending context sentences.
pub fn feature_strings(example: &Example, span: AnchorSpan, ablation: Ablation) -> Vec<String> {
    let tokens = &example.tokens;
    let (sent_start, sent_end) = example
        .sentence_bounds
        .iter()
        .copied()
        .find(|&(s, e)| span.start >= s && span.end < e)
        .unwrap_or((0, tokens.len()));
    let mut out = Vec::with_capacity(14);

    let anchor_text = tokens[span.start..=span.end]
        .iter()
        .map(|t| t.lower.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    out.push(format!("T1={anchor_text}"));

    let left_at = |offset: usize| {
        span.start
            .checked_sub(offset)
            .filter(|&i| i >= sent_start)
    };
    let right_at = |offset: usize| {
        let i = span.end + offset;
        (i < sent_end).then_some(i)
    };

    for offset in 1..=3usize {
        let left = left_at(offset).map(|i| tokens[i].lower.as_str()).unwrap_or(PAD);
        let right = right_at(offset).map(|i| tokens[i].lower.as_str()).unwrap_or(PAD);
        out.push(format!("T2:l{offset}={left}"));
        out.push(format!("T2:r{offset}={right}"));
    }

    if ablation.keeps_window_pos() {
        for offset in 1..=3usize {
            let left = left_at(offset).map(|i| tokens[i].pos.as_str()).unwrap_or(PAD);
            let right = right_at(offset).map(|i| tokens[i].pos.as_str()).unwrap_or(PAD);
            out.push(format!("T3:l{offset}={left}"));
            out.push(format!("T3:r{offset}={right}"));
        }
    }

    if ablation.keeps_head_pos() {
        let root = span.syntactic_root(tokens);
        let head_pos = tokens[root]
            .dep_head
            .map(|h| tokens[h].pos.as_str())
            .unwrap_or(ROOT);
        out.push(format!("T4={head_pos}"));
    }
    out
}

/// Hashed feature vector for a span under the given ablation.
pub fn extract_identification_features(
    example: &Example,
    span: AnchorSpan,
    ablation: Ablation,
    bits: u32,
) -> FeatureVector {
    let strings = feature_strings(example, span, ablation);
    FeatureVector::from_strings(strings.iter().map(String::as_str), bits)
}
