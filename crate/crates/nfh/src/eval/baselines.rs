//! Resolution baselines: noun-position heuristics and a linear classifier
//! over hand-crafted templates.

use crate::corpus::{numbers, AnchorSpan, Example, ImplicitClass, Resolution, IMPLICIT_CLASSES};
use crate::identify::features::FeatureVector;
use crate::identify::linear::{classify_span, train_identifier, LinearModel, TrainOptions};
use crate::identify::TagScheme;
use crate::{NfhError, Result};

/// Which noun to pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NounStrategy {
    First,
    Last,
    /// Minimal token distance to the anchor; ties go left.
    Closest,
}

impl NounStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            NounStrategy::First => "first",
            NounStrategy::Last => "last",
            NounStrategy::Closest => "closest",
        }
    }
}

/// Index of the chosen noun in the context, `None` when there is none.
/// Anchor-span tokens are never candidates.
pub fn noun_baseline(
    example: &Example,
    anchor: AnchorSpan,
    strategy: NounStrategy,
    scheme: &TagScheme,
) -> Option<usize> {
    let nouns: Vec<usize> = example
        .tokens
        .iter()
        .enumerate()
        .filter(|(i, t)| !anchor.contains(*i) && scheme.is_noun(&t.pos))
        .map(|(i, _)| i)
        .collect();
    match strategy {
        NounStrategy::First => nouns.first().copied(),
        NounStrategy::Last => nouns.last().copied(),
        NounStrategy::Closest => nouns
            .into_iter()
            .min_by_key(|&i| (anchor.distance_to(i), i)),
    }
}

const CURRENCY_WORDS: [&str; 14] = [
    "dollar", "dollars", "euro", "euros", "pound", "pounds", "cent", "cents", "buck", "bucks",
    "quid", "yen", "franc", "francs",
];
const CURRENCY_SYMBOLS: [&str; 4] = ["$", "£", "€", "¥"];
const TIME_WORDS: [&str; 8] = [
    "o'clock", "am", "pm", "a.m.", "p.m.", "noon", "midnight", "oclock",
];

fn has_currency_expression(example: &Example) -> bool {
    example.tokens.iter().any(|t| {
        CURRENCY_SYMBOLS.contains(&t.surface.as_str())
            || CURRENCY_WORDS.contains(&t.lower.as_str())
    })
}

/// Clock expressions: "7:30" digits-colon-digits, or a time word.
fn has_time_expression(example: &Example) -> bool {
    example.tokens.iter().any(|t| {
        if TIME_WORDS.contains(&t.lower.as_str()) {
            return true;
        }
        let s = &t.surface;
        if let Some((h, m)) = s.split_once(':') {
            return !h.is_empty()
                && h.chars().all(|c| c.is_ascii_digit())
                && m.len() == 2
                && m.chars().all(|c| c.is_ascii_digit());
        }
        false
    })
}

/// Magnitude bins: <=1, (1,10], (10,100], (100,1600], (1600,2100], >2100.
fn size_bin(value: f64) -> &'static str {
    if value <= 1.0 {
        "<=1"
    } else if value <= 10.0 {
        "(1,10]"
    } else if value <= 100.0 {
        "(10,100]"
    } else if value <= 1600.0 {
        "(100,1600]"
    } else if value <= 2100.0 {
        "(1600,2100]"
    } else {
        ">2100"
    }
}

fn sentence_length_bin(len: usize) -> &'static str {
    if len < 5 {
        "<5"
    } else if len < 10 {
        "<10"
    } else {
        ">=10"
    }
}

/// Feature strings for the linear resolution baseline.
///
/// Label features (window lemmas and POS, the anchor's dependency edge and
/// head), structure features (sentence/span shape), match features
/// (currency, time, optional entity-before-anchor when entity spans are
/// present) and the magnitude/shape features.
pub fn resolution_feature_strings(example: &Example, anchor: AnchorSpan) -> Vec<String> {
    let tokens = &example.tokens;
    let mut out = Vec::with_capacity(32);
    let root = anchor.syntactic_root(tokens);
    let head = tokens[root].dep_head;

    // Labels.
    let anchor_lemmas = tokens[anchor.start..=anchor.end]
        .iter()
        .map(|t| t.lemma.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    out.push(format!("anchor_lemma={anchor_lemmas}"));
    for offset in 1..=2usize {
        let left = anchor.start.checked_sub(offset);
        let right = anchor.end + offset;
        out.push(format!(
            "win_lemma:l{offset}={}",
            left.map(|i| tokens[i].lemma.as_str()).unwrap_or("<pad>")
        ));
        out.push(format!(
            "win_lemma:r{offset}={}",
            tokens.get(right).map(|t| t.lemma.as_str()).unwrap_or("<pad>")
        ));
        out.push(format!(
            "win_pos:l{offset}={}",
            left.map(|i| tokens[i].pos.as_str()).unwrap_or("<pad>")
        ));
        out.push(format!(
            "win_pos:r{offset}={}",
            tokens.get(right).map(|t| t.pos.as_str()).unwrap_or("<pad>")
        ));
    }
    out.push(format!("dep_edge={}", tokens[root].dep_label));
    match head {
        Some(h) => {
            out.push(format!("head_pos={}", tokens[h].pos));
            out.push(format!("head_lemma={}", tokens[h].lemma));
            // Leftmost child of the anchor's head, and the head's children.
            let children: Vec<usize> = tokens
                .iter()
                .enumerate()
                .filter(|(_, t)| t.dep_head == Some(h))
                .map(|(i, _)| i)
                .collect();
            if let Some(&first) = children.first() {
                out.push(format!("head_leftmost_child={}", tokens[first].lemma));
            }
            for &c in &children {
                out.push(format!("head_child={}", tokens[c].dep_label));
            }
        }
        None => {
            out.push("head_pos=<root>".to_string());
            out.push("head_lemma=<root>".to_string());
        }
    }

    // Structure.
    let (sent_start, sent_end) = example
        .sentence_bounds
        .iter()
        .copied()
        .find(|&(s, e)| anchor.start >= s && anchor.end < e)
        .unwrap_or((0, tokens.len()));
    let question_nearby = tokens[sent_start..sent_end].iter().any(|t| t.surface == "?");
    if question_nearby {
        out.push("question_mark".to_string());
    }
    out.push(format!(
        "sent_len_bin={}",
        sentence_length_bin(sent_end - sent_start)
    ));
    out.push(format!(
        "span_len_bin={}",
        match anchor.len() {
            1 => "1",
            2 => "2",
            _ => "3+",
        }
    ));
    let span_text: Vec<&str> = tokens[anchor.start..=anchor.end]
        .iter()
        .map(|t| t.surface.as_str())
        .collect();
    if span_text.iter().any(|s| s.contains('-')) {
        out.push("hyphen_in_span".to_string());
    }
    if span_text.iter().any(|s| s.contains('/')) {
        out.push("slash_in_span".to_string());
    }
    let before = anchor.start.checked_sub(1).map(|i| tokens[i].surface.as_str());
    let after = tokens.get(anchor.end + 1).map(|t| t.surface.as_str());
    if before.map(|s| s.starts_with('\'')).unwrap_or(false)
        || after.map(|s| s.starts_with('\'')).unwrap_or(false)
    {
        out.push("apostrophe_adjacent".to_string());
    }
    if after.map(|s| s == "'s").unwrap_or(false) {
        out.push("apostrophe_s_after".to_string());
    }
    if anchor.end + 1 == sent_end
        || tokens
            .get(anchor.end + 1)
            .map(|t| t.pos == "." && anchor.end + 2 == sent_end)
            .unwrap_or(false)
    {
        out.push("anchor_ends_sentence".to_string());
    }

    // Match.
    if has_currency_expression(example) {
        out.push("has_currency".to_string());
    }
    if has_time_expression(example) {
        out.push("has_time".to_string());
    }
    if !example.entities.is_empty() {
        let entity_before = example.entities.iter().any(|&(_, e)| e <= anchor.start);
        if entity_before {
            out.push("entity_before_anchor".to_string());
        }
    }

    // Other.
    if let Some(value) = numbers::span_value(tokens, anchor) {
        out.push(format!("size_bin={}", size_bin(value)));
    }
    out.push(format!(
        "shape={}",
        if numbers::span_is_digits(tokens, anchor) {
            "DIGIT"
        } else {
            "WORD"
        }
    ));
    out
}

/// Hashed feature vector over the resolution templates.
pub fn extract_linear_resolution_features(
    example: &Example,
    anchor: AnchorSpan,
    bits: u32,
) -> FeatureVector {
    let strings = resolution_feature_strings(example, anchor);
    FeatureVector::from_strings(strings.iter().map(String::as_str), bits)
}

/// Output labels of the linear baseline: the six implicit classes plus the
/// three noun pickers for Reference cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BaselineLabel {
    Class(usize),
    Noun(NounStrategy),
}

const BASELINE_LABELS: [BaselineLabel; 9] = [
    BaselineLabel::Class(0),
    BaselineLabel::Class(1),
    BaselineLabel::Class(2),
    BaselineLabel::Class(3),
    BaselineLabel::Class(4),
    BaselineLabel::Class(5),
    BaselineLabel::Noun(NounStrategy::Closest),
    BaselineLabel::Noun(NounStrategy::Last),
    BaselineLabel::Noun(NounStrategy::First),
];

/// One-vs-rest linear baseline over the resolution templates. Reference
/// golds train toward whichever noun picker recovers a gold head (closest
/// preferred, then last, then first; closest as the fallback). Useful as
/// a floor, not a contender.
#[derive(Debug, Clone)]
pub struct LinearResolver {
    models: Vec<LinearModel>,
    bits: u32,
}

impl LinearResolver {
    pub fn train(examples: &[Example], options: &TrainOptions, scheme: &TagScheme) -> Result<Self> {
        let labeled: Vec<(&Example, usize)> = examples
            .iter()
            .filter_map(|ex| {
                let gold = ex.gold.as_ref()?;
                Some((ex, gold_to_label(ex, gold, scheme)))
            })
            .collect();
        if labeled.is_empty() {
            return Err(NfhError::Data("no labeled examples for the baseline".into()));
        }

        let features: Vec<FeatureVector> = labeled
            .iter()
            .map(|(ex, _)| extract_linear_resolution_features(ex, ex.anchor, options.hash_bits))
            .collect();

        let mut models = Vec::with_capacity(BASELINE_LABELS.len());
        for label_idx in 0..BASELINE_LABELS.len() {
            let dataset: Vec<(FeatureVector, bool)> = features
                .iter()
                .cloned()
                .zip(labeled.iter().map(|(_, l)| *l == label_idx))
                .collect();
            let has_pos = dataset.iter().any(|(_, y)| *y);
            let has_neg = dataset.iter().any(|(_, y)| !*y);
            let model = if has_pos && has_neg {
                train_identifier(&dataset, options)?
            } else {
                // Degenerate one-vs-rest slice; a constant-negative model.
                LinearModel {
                    weights: vec![0.0; 1 << options.hash_bits],
                    bias: -1.0,
                    feature_space_bits: options.hash_bits,
                }
            };
            models.push(model);
        }
        Ok(LinearResolver { models, bits: options.hash_bits })
    }

    pub fn predict(&self, example: &Example, scheme: &TagScheme) -> Resolution {
        let features = extract_linear_resolution_features(example, example.anchor, self.bits);
        let mut best = 0usize;
        let mut best_margin = f64::NEG_INFINITY;
        for (i, model) in self.models.iter().enumerate() {
            let (_, margin) = classify_span(model, &features);
            if margin > best_margin {
                best_margin = margin;
                best = i;
            }
        }
        match BASELINE_LABELS[best] {
            BaselineLabel::Class(k) => Resolution::Implicit(IMPLICIT_CLASSES[k]),
            BaselineLabel::Noun(strategy) => {
                match noun_baseline(example, example.anchor, strategy, scheme) {
                    Some(idx) => Resolution::reference(idx),
                    // No noun in context: fall back to OTHER.
                    None => Resolution::Implicit(ImplicitClass::Other),
                }
            }
        }
    }
}

/// Accuracy of each noun strategy over the Reference subset of a gold
/// corpus (the denominator is the Reference cases only).
pub fn noun_baseline_accuracies(
    examples: &[Example],
    scheme: &TagScheme,
) -> [(NounStrategy, f64); 3] {
    let reference: Vec<&Example> = examples
        .iter()
        .filter(|ex| matches!(ex.gold, Some(Resolution::Reference { .. })))
        .collect();
    let strategies = [NounStrategy::First, NounStrategy::Last, NounStrategy::Closest];
    strategies.map(|strategy| {
        if reference.is_empty() {
            return (strategy, 0.0);
        }
        let hits: usize = reference
            .iter()
            .filter(|ex| {
                let Some(pick) = noun_baseline(ex, ex.anchor, strategy, scheme) else {
                    return false;
                };
                let gold = ex.gold.as_ref().unwrap();
                super::head_correct(ex, &Resolution::reference(pick), gold)
            })
            .count();
        (strategy, hits as f64 / reference.len() as f64)
    })
}

fn gold_to_label(example: &Example, gold: &Resolution, scheme: &TagScheme) -> usize {
    match gold {
        Resolution::Implicit(c) => c.index(),
        Resolution::Reference { heads } => {
            for (i, label) in BASELINE_LABELS.iter().enumerate().skip(6) {
                let BaselineLabel::Noun(strategy) = label else { continue };
                if let Some(pick) = noun_baseline(example, example.anchor, *strategy, scheme) {
                    if heads.contains(&pick) {
                        return i;
                    }
                }
            }
            6 // closest-noun slot as fallback
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ExampleBuilder;

    fn scheme() -> TagScheme {
        TagScheme::default()
    }

    #[test]
    fn closest_noun_ties_left() {
        // Nouns at 2 and 9, anchor at 5: distances 3 and 4.
        let ex = ExampleBuilder::new("b/1")
            .sentence(
                "so|RB|3|advmod the|DT|2|det dog|NN|3|nsubj saw|VBD|-1|root like|IN|3|prep five|CD|4|pobj near|IN|3|prep that|DT|9|det old|JJ|9|amod barn|NN|6|pobj",
                None,
            )
            .anchor(5, 5)
            .build()
            .unwrap();
        assert_eq!(
            noun_baseline(&ex, ex.anchor, NounStrategy::Closest, &scheme()),
            Some(2)
        );
        assert_eq!(
            noun_baseline(&ex, ex.anchor, NounStrategy::First, &scheme()),
            Some(2)
        );
        assert_eq!(
            noun_baseline(&ex, ex.anchor, NounStrategy::Last, &scheme()),
            Some(9)
        );
    }

    #[test]
    fn no_nouns_is_none() {
        let ex = ExampleBuilder::new("b/2")
            .sentence("take|VB|-1|root two|CD|0|dobj", None)
            .anchor(1, 1)
            .build()
            .unwrap();
        assert_eq!(
            noun_baseline(&ex, ex.anchor, NounStrategy::Closest, &scheme()),
            None
        );
    }

    #[test]
    fn year_anchor_features() {
        let ex = ExampleBuilder::new("b/3")
            .sentence(
                "a|DT|2|det happy|JJ|2|amod 1969|CD|-1|root",
                None,
            )
            .anchor(2, 2)
            .build()
            .unwrap();
        let strings = resolution_feature_strings(&ex, ex.anchor);
        assert!(strings.contains(&"size_bin=(1600,2100]".to_string()));
        assert!(strings.contains(&"shape=DIGIT".to_string()));
        assert!(strings.contains(&"sent_len_bin=<5".to_string()));
        assert!(strings.contains(&"anchor_ends_sentence".to_string()));
    }

    #[test]
    fn word_anchor_at_sentence_end() {
        let ex = ExampleBuilder::new("b/4")
            .sentence(
                "give|VB|-1|root me|PRP|0|dative one|CD|0|dobj .|.|0|punct",
                None,
            )
            .anchor(2, 2)
            .build()
            .unwrap();
        let strings = resolution_feature_strings(&ex, ex.anchor);
        assert!(strings.contains(&"shape=WORD".to_string()));
        assert!(strings.contains(&"anchor_ends_sentence".to_string()));
        assert!(strings.contains(&"sent_len_bin=<5".to_string()));
    }

    #[test]
    fn entity_feature_only_with_entities() {
        let base = ExampleBuilder::new("b/5")
            .sentence(
                "Anna|NNP|1|nsubj saw|VBD|-1|root five|CD|1|dobj",
                None,
            )
            .anchor(2, 2);
        let without = base.clone().build().unwrap();
        let with = base.entity(0, 1).build().unwrap();
        let s1 = resolution_feature_strings(&without, without.anchor);
        let s2 = resolution_feature_strings(&with, with.anchor);
        assert!(!s1.contains(&"entity_before_anchor".to_string()));
        assert!(s2.contains(&"entity_before_anchor".to_string()));
    }

    #[test]
    fn linear_resolver_learns_a_simple_split() {
        use crate::identify::linear::TrainOptions;
        // Digit anchors labeled YEAR, word anchors labeled Reference: the
        // shape feature separates them.
        let mut corpus = Vec::new();
        for i in 0..8 {
            corpus.push(
                ExampleBuilder::new(format!("lr{i}/y"))
                    .sentence(
                        &format!("w{i}|NN|1|nsubj is|VBZ|-1|root {}|CD|1|attr", 1900 + i),
                        None,
                    )
                    .anchor(2, 2)
                    .gold_implicit(crate::corpus::ImplicitClass::Year)
                    .build()
                    .unwrap(),
            );
            corpus.push(
                ExampleBuilder::new(format!("lr{i}/r"))
                    .sentence(
                        &format!("the|DT|1|det w{i}|NN|2|nsubj took|VBD|-1|root two|CD|2|dobj"),
                        None,
                    )
                    .anchor(3, 3)
                    .gold_reference(&[1])
                    .build()
                    .unwrap(),
            );
        }
        let options = TrainOptions { hash_bits: 12, epochs: 20, ..TrainOptions::default() };
        let model = LinearResolver::train(&corpus, &options, &scheme()).unwrap();
        let correct = corpus
            .iter()
            .filter(|ex| {
                let pred = model.predict(ex, &scheme());
                super::super::head_correct(ex, &pred, ex.gold.as_ref().unwrap())
            })
            .count();
        assert!(
            correct * 10 >= corpus.len() * 9,
            "linear baseline fit only {correct}/{} on separable data",
            corpus.len()
        );
    }

    #[test]
    fn noun_accuracy_helper_counts_reference_only() {
        let mut corpus = vec![ExampleBuilder::new("na/1")
            .sentence(
                "two|CD|1|nummod months|NNS|2|nsubj left|VBD|-1|root ,|,|2|punct three|CD|2|conj",
                None,
            )
            .anchor(4, 4)
            .gold_reference(&[1])
            .build()
            .unwrap()];
        corpus.push(
            ExampleBuilder::new("na/2")
                .sentence("I|PRP|1|nsubj am|VBP|-1|root 42|CD|1|attr", None)
                .anchor(2, 2)
                .gold_implicit(crate::corpus::ImplicitClass::Age)
                .build()
                .unwrap(),
        );
        let accs = noun_baseline_accuracies(&corpus, &scheme());
        // The single Reference case has "months" as its only noun.
        for (_, acc) in accs {
            assert_eq!(acc, 1.0);
        }
    }

    #[test]
    fn currency_and_time_lexicons() {
        let ex = ExampleBuilder::new("b/6")
            .sentence(
                "it|PRP|1|nsubj costs|VBZ|-1|root fifty|CD|3|nummod dollars|NNS|1|dobj at|IN|1|prep 7:30|CD|4|pobj",
                None,
            )
            .anchor(2, 2)
            .build()
            .unwrap();
        let strings = resolution_feature_strings(&ex, ex.anchor);
        assert!(strings.contains(&"has_currency".to_string()));
        assert!(strings.contains(&"has_time".to_string()));
    }
}
