//! Rule-based NFH anchor identification.
//!
//! The cascade: noun-less number phrases found in constituency trees,
//! minus dependency-based filters, plus a registry of textual patterns.
//! Textual-pattern positives are precision-tuned for contexts where the
//! anchor legitimately sits next to a noun ("a thing or two"), so the
//! dependency filters apply to constituency candidates only.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{detect_numeric_spans, AnchorSpan, ConstituencyNode, Example, Token};
use crate::{NfhError, Result};

/// Phrase labels eligible for the noun-less-NP rule.
const FH_PHRASE_LABELS: [&str; 5] = ["NP", "QP", "NP-TMP", "NX", "SQ"];

/// Currency symbols for the adjacency filter.
const CURRENCY_SYMBOLS: [&str; 4] = ["$", "£", "€", "¥"];

/// Tagset mapping; defaults cover both PTB and UD.
#[derive(Debug, Clone)]
pub struct TagScheme {
    /// Any noun, used for the constituency "contains no noun" test.
    pub noun_tags: Vec<String>,
    /// Common nouns only, used by filter F1 (proper nouns route to F4).
    pub common_noun_tags: Vec<String>,
    pub proper_noun_tags: Vec<String>,
    pub determiner_tags: Vec<String>,
    pub pronoun_tags: Vec<String>,
    /// Labels under which a noun head does not indicate modification
    /// (promoted elliptical conjuncts keep their noun conjunct as head).
    pub coordination_labels: Vec<String>,
    /// Dependency labels that tie a number into a proper name.
    pub name_labels: Vec<String>,
}

impl Default for TagScheme {
    fn default() -> Self {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        TagScheme {
            noun_tags: v(&["NN", "NNS", "NNP", "NNPS", "NOUN", "PROPN"]),
            common_noun_tags: v(&["NN", "NNS", "NOUN"]),
            proper_noun_tags: v(&["NNP", "NNPS", "PROPN"]),
            determiner_tags: v(&["DT", "PDT", "PRP$", "DET"]),
            pronoun_tags: v(&["PRP", "PRP$", "WP", "PRON"]),
            coordination_labels: v(&["conj", "appos", "parataxis", "list"]),
            name_labels: v(&["flat", "flat:name", "name", "compound", "nn"]),
        }
    }
}

impl TagScheme {
    pub fn is_noun(&self, pos: &str) -> bool {
        self.noun_tags.iter().any(|t| t == pos)
    }

    pub fn is_common_noun(&self, pos: &str) -> bool {
        self.common_noun_tags.iter().any(|t| t == pos)
    }

    pub fn is_proper_noun(&self, pos: &str) -> bool {
        self.proper_noun_tags.iter().any(|t| t == pos)
    }

    pub fn is_determiner(&self, pos: &str) -> bool {
        self.determiner_tags.iter().any(|t| t == pos)
    }

    pub fn is_pronoun(&self, pos: &str) -> bool {
        self.pronoun_tags.iter().any(|t| t == pos)
    }
}

/// Identifiers of the textual patterns shipped with the registry.
///
/// The underlying method used ten text-based patterns but spells out only
/// the conjunction case; these four cover the documented positives, and the
/// registry keeps the set open for additions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TextualPattern {
    /// NUM "or" NUM NOUN: the first number is an anchor ("eight or nine clubs").
    P1NumOrNumNoun,
    /// NOUN "or" NUM: the number is an anchor ("a thing or two").
    P2NounOrNum,
    /// NUM "of" DET/PRON ...: headless partitive ("one of the reasons").
    P3Partitive,
    /// "strikes"/"at" NUM with no following noun ("the clock strikes one").
    P4Clock,
}

impl TextualPattern {
    pub fn id(&self) -> &'static str {
        match self {
            TextualPattern::P1NumOrNumNoun => "P1",
            TextualPattern::P2NounOrNum => "P2",
            TextualPattern::P3Partitive => "P3",
            TextualPattern::P4Clock => "P4",
        }
    }

    fn from_id(id: &str) -> Option<Self> {
        match id {
            "P1" => Some(TextualPattern::P1NumOrNumNoun),
            "P2" => Some(TextualPattern::P2NounOrNum),
            "P3" => Some(TextualPattern::P3Partitive),
            "P4" => Some(TextualPattern::P4Clock),
            _ => None,
        }
    }
}

/// Ordered, toggleable set of textual patterns.
#[derive(Debug, Clone)]
pub struct PatternRegistry {
    patterns: Vec<(TextualPattern, bool)>,
}

#[derive(Serialize, Deserialize)]
struct RegistryEntry {
    id: String,
    enabled: bool,
}

impl Default for PatternRegistry {
    fn default() -> Self {
        PatternRegistry {
            patterns: vec![
                (TextualPattern::P1NumOrNumNoun, true),
                (TextualPattern::P2NounOrNum, true),
                (TextualPattern::P3Partitive, true),
                (TextualPattern::P4Clock, true),
            ],
        }
    }
}

impl PatternRegistry {
    /// Load from the JSON registry format: `[{"id":"P1","enabled":true},...]`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            NfhError::validation("registry", format!("cannot open {}: {e}", path.display()))
        })?;
        let entries: Vec<RegistryEntry> = serde_json::from_str(&text)
            .map_err(|e| NfhError::format(format!("bad pattern registry: {e}")))?;
        let mut patterns = Vec::new();
        for e in entries {
            let p = TextualPattern::from_id(&e.id).ok_or_else(|| {
                NfhError::validation("registry", format!("unknown pattern id `{}`", e.id))
            })?;
            patterns.push((p, e.enabled));
        }
        Ok(PatternRegistry { patterns })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let entries: Vec<RegistryEntry> = self
            .patterns
            .iter()
            .map(|(p, enabled)| RegistryEntry { id: p.id().to_string(), enabled: *enabled })
            .collect();
        let text = serde_json::to_string_pretty(&entries).expect("registry serialization");
        std::fs::write(path, text).map_err(|e| NfhError::io(path.display().to_string(), e))
    }

    pub fn enabled(&self) -> impl Iterator<Item = TextualPattern> + '_ {
        self.patterns
            .iter()
            .filter(|(_, on)| *on)
            .map(|(p, _)| *p)
    }

    pub fn set_enabled(&mut self, pattern: TextualPattern, on: bool) {
        for (p, flag) in &mut self.patterns {
            if *p == pattern {
                *flag = on;
            }
        }
    }
}

/// Filter identifiers, checked in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    /// Anchor's dependency head is a common noun (non-coordination arc).
    F1NounHead,
    /// Anchor attaches via a `nummod` arc.
    F2Nummod,
    /// Anchor is adjacent to a currency symbol.
    F3Currency,
    /// Anchor sits inside a proper-noun name span.
    F4NameSpan,
}

impl Filter {
    pub fn id(self) -> &'static str {
        match self {
            Filter::F1NounHead => "F1",
            Filter::F2Nummod => "F2",
            Filter::F3Currency => "F3",
            Filter::F4NameSpan => "F4",
        }
    }
}

/// A candidate anchor annotated with what produced and possibly removed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleDecision {
    pub span: AnchorSpan,
    /// "constituency", or a textual pattern id.
    pub fired_rule: String,
    /// Present when a filter excluded the candidate from the positives.
    pub filtered_by: Option<&'static str>,
}

/// Noun-less number phrases in a constituency tree.
///
/// A phrase labeled NP/QP/NP-TMP/NX/SQ that covers at least one numeric
/// span and no noun-POS leaf yields its maximal numeric span (longest,
/// leftmost on ties). When qualifying phrases nest, the innermost wins.
pub fn identify_by_constituency(
    tree: &ConstituencyNode,
    tokens: &[Token],
    scheme: &TagScheme,
) -> Vec<AnchorSpan> {
    let numeric = detect_numeric_spans(tokens);
    let mut found: Vec<AnchorSpan> = Vec::new();
    walk_phrases(tree, tokens, scheme, &numeric, &mut found);
    found.sort();
    found.dedup();
    found
}

fn walk_phrases(
    node: &ConstituencyNode,
    tokens: &[Token],
    scheme: &TagScheme,
    numeric: &[AnchorSpan],
    found: &mut Vec<AnchorSpan>,
) {
    let ConstituencyNode::Phrase { label, children } = node else {
        return;
    };
    // Children first: the innermost qualifying phrase claims its span.
    for child in children {
        walk_phrases(child, tokens, scheme, numeric, found);
    }
    if !FH_PHRASE_LABELS.contains(&label.as_str()) {
        return;
    }
    let Some((lo, hi)) = node.span() else { return };
    let has_noun = (lo..=hi).any(|i| scheme.is_noun(&tokens[i].pos));
    if has_noun {
        return;
    }
    let best = numeric
        .iter()
        .filter(|s| s.start >= lo && s.end <= hi)
        .max_by_key(|s| (s.len(), std::cmp::Reverse(s.start)));
    if let Some(&span) = best {
        if !found.iter().any(|f| spans_overlap(*f, span)) {
            found.push(span);
        }
    }
}

fn spans_overlap(a: AnchorSpan, b: AnchorSpan) -> bool {
    a.start <= b.end && b.start <= a.end
}

/// Annotate candidates with the first filter that rejects them, if any.
pub fn apply_filters(
    candidates: &[AnchorSpan],
    tokens: &[Token],
    scheme: &TagScheme,
) -> Vec<RuleDecision> {
    candidates
        .iter()
        .map(|&span| RuleDecision {
            span,
            fired_rule: "constituency".to_string(),
            filtered_by: first_filter(span, tokens, scheme).map(Filter::id),
        })
        .collect()
}

fn first_filter(span: AnchorSpan, tokens: &[Token], scheme: &TagScheme) -> Option<Filter> {
    let root = span.syntactic_root(tokens);

    // F1: syntactic head is a common noun, excluding coordination arcs.
    if let Some(head) = tokens[root].dep_head {
        let label = tokens[root].dep_label.as_str();
        let coordination = scheme.coordination_labels.iter().any(|l| l == label);
        if !span.contains(head) && scheme.is_common_noun(&tokens[head].pos) && !coordination {
            return Some(Filter::F1NounHead);
        }
    }

    // F2: nummod attachment.
    if tokens[root].dep_label == "nummod" {
        return Some(Filter::F2Nummod);
    }

    // F3: adjacent currency symbol.
    let before = span.start.checked_sub(1).map(|i| tokens[i].surface.as_str());
    let after = tokens.get(span.end + 1).map(|t| t.surface.as_str());
    for adj in [before, after].into_iter().flatten() {
        if CURRENCY_SYMBOLS.contains(&adj) {
            return Some(Filter::F3Currency);
        }
    }

    // F4: part of a proper-noun name span: an adjacent proper noun linked
    // to the anchor by a name-like arc (either direction).
    for adj in [span.start.checked_sub(1), Some(span.end + 1)]
        .into_iter()
        .flatten()
    {
        let Some(adj_tok) = tokens.get(adj) else { continue };
        if !scheme.is_proper_noun(&adj_tok.pos) {
            continue;
        }
        let name_arc = |label: &str| scheme.name_labels.iter().any(|l| l == label);
        let anchor_to_adj = (span.start..=span.end).any(|i| {
            tokens[i].dep_head == Some(adj) && name_arc(&tokens[i].dep_label)
        });
        let adj_to_anchor = adj_tok
            .dep_head
            .map(|h| span.contains(h) && name_arc(&adj_tok.dep_label))
            .unwrap_or(false);
        if anchor_to_adj || adj_to_anchor {
            return Some(Filter::F4NameSpan);
        }
    }
    None
}

/// Additional positives from the registered textual patterns.
pub fn apply_textual_patterns(
    tokens: &[Token],
    registry: &PatternRegistry,
    scheme: &TagScheme,
) -> Vec<(AnchorSpan, TextualPattern)> {
    let numeric = detect_numeric_spans(tokens);
    let mut out: Vec<(AnchorSpan, TextualPattern)> = Vec::new();
    let span_at = |idx: usize| numeric.iter().copied().find(|s| s.contains(idx));

    for pattern in registry.enabled() {
        for &span in &numeric {
            if out.iter().any(|(s, _)| *s == span) {
                continue;
            }
            let fires = match pattern {
                TextualPattern::P1NumOrNumNoun => {
                    // span "or" NUM NOUN
                    let or_idx = span.end + 1;
                    tokens.get(or_idx).map(|t| t.lower == "or").unwrap_or(false)
                        && span_at(or_idx + 1)
                            .map(|second| {
                                tokens
                                    .get(second.end + 1)
                                    .map(|t| scheme.is_noun(&t.pos))
                                    .unwrap_or(false)
                            })
                            .unwrap_or(false)
                }
                TextualPattern::P2NounOrNum => {
                    // NOUN "or" span
                    span.start >= 2
                        && tokens[span.start - 1].lower == "or"
                        && scheme.is_noun(&tokens[span.start - 2].pos)
                }
                TextualPattern::P3Partitive => {
                    // span "of" DET/PRON ...
                    let of_idx = span.end + 1;
                    tokens.get(of_idx).map(|t| t.lower == "of").unwrap_or(false)
                        && tokens
                            .get(of_idx + 1)
                            .map(|t| scheme.is_determiner(&t.pos) || scheme.is_pronoun(&t.pos))
                            .unwrap_or(false)
                }
                TextualPattern::P4Clock => {
                    // "strikes"/"struck"/"at" span, next token not a noun
                    let trigger = span
                        .start
                        .checked_sub(1)
                        .map(|i| matches!(tokens[i].lower.as_str(), "strikes" | "struck" | "strike" | "at"))
                        .unwrap_or(false);
                    let no_noun_after = tokens
                        .get(span.end + 1)
                        .map(|t| !scheme.is_noun(&t.pos))
                        .unwrap_or(true);
                    trigger && no_noun_after
                }
            };
            if fires {
                out.push((span, pattern));
            }
        }
    }
    out.sort_by_key(|(s, _)| *s);
    out
}

/// The full cascade over one example. Requires trees and dependency fields.
pub fn identify_rule_based(
    example: &Example,
    registry: &PatternRegistry,
    scheme: &TagScheme,
) -> Result<Vec<AnchorSpan>> {
    Ok(identify_rule_decisions(example, registry, scheme)?
        .into_iter()
        .filter(|d| d.filtered_by.is_none())
        .map(|d| d.span)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// Like [`identify_rule_based`] but keeps every candidate with its
/// provenance, including filtered ones.
pub fn identify_rule_decisions(
    example: &Example,
    registry: &PatternRegistry,
    scheme: &TagScheme,
) -> Result<Vec<RuleDecision>> {
    let trees = example.trees.as_ref().ok_or_else(|| {
        NfhError::Data(format!(
            "example `{}` has no constituency trees; use the learned identifier instead",
            example.id
        ))
    })?;

    let mut decisions: Vec<RuleDecision> = Vec::new();
    for tree in trees {
        let candidates = identify_by_constituency(tree, &example.tokens, scheme);
        decisions.extend(apply_filters(&candidates, &example.tokens, scheme));
    }
    // Textual patterns are precision-tuned for noun-adjacent contexts and
    // bypass the dependency filters.
    for (span, pattern) in apply_textual_patterns(&example.tokens, registry, scheme) {
        if let Some(existing) = decisions.iter_mut().find(|d| d.span == span) {
            existing.filtered_by = None;
            existing.fired_rule = pattern.id().to_string();
        } else {
            decisions.push(RuleDecision {
                span,
                fired_rule: pattern.id().to_string(),
                filtered_by: None,
            });
        }
    }
    decisions.sort_by_key(|d| d.span);
    decisions.dedup();
    Ok(decisions)
}
