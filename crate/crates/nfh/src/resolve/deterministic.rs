//! The four deterministic resolution patterns.
//!
//! Two string matches (*no one*, *you two*, both resolving to PEOPLE) and
//! two dependency patterns: partitives ("NUM of NP" takes the NP's noun)
//! and copulars ("X 'be' the one" takes the subject X). Patterns are tried
//! in that fixed order and the first match wins. Matches are precise enough
//! to be reported separately and kept out of model evaluation.

use crate::corpus::{AnchorSpan, Example, ImplicitClass, Resolution, Token};
use crate::identify::TagScheme;

/// Copular verb lemmas and surfaces.
const BE_FORMS: [&str; 11] = [
    "be", "is", "am", "are", "was", "were", "been", "being", "'s", "'re", "'m",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeterministicPattern {
    NoOne,
    YouTwo,
    Partitive,
    Copular,
}

impl DeterministicPattern {
    pub fn name(&self) -> &'static str {
        match self {
            DeterministicPattern::NoOne => "NO_ONE",
            DeterministicPattern::YouTwo => "YOU_TWO",
            DeterministicPattern::Partitive => "PARTITIVE",
            DeterministicPattern::Copular => "COPULAR",
        }
    }
}

/// A fired pattern with its resolution. NO_ONE and YOU_TWO always carry
/// Implicit(PEOPLE); PARTITIVE and COPULAR always carry a Reference.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternMatch {
    pub pattern: DeterministicPattern,
    pub resolution: Resolution,
}

/// Try the four patterns in fixed order; `None` when nothing matches.
pub fn match_deterministic(
    example: &Example,
    anchor: AnchorSpan,
    scheme: &TagScheme,
) -> Option<PatternMatch> {
    let tokens = &example.tokens;

    // NO_ONE: literal "no one".
    if anchor.len() == 1 && tokens[anchor.start].lower == "one" {
        if let Some(prev) = anchor.start.checked_sub(1) {
            if tokens[prev].lower == "no" {
                return Some(PatternMatch {
                    pattern: DeterministicPattern::NoOne,
                    resolution: Resolution::Implicit(ImplicitClass::People),
                });
            }
        }
    }

    // YOU_TWO: literal "you two".
    if anchor.len() == 1 && tokens[anchor.start].lower == "two" {
        if let Some(prev) = anchor.start.checked_sub(1) {
            if tokens[prev].lower == "you" {
                return Some(PatternMatch {
                    pattern: DeterministicPattern::YouTwo,
                    resolution: Resolution::Implicit(ImplicitClass::People),
                });
            }
        }
    }

    // PARTITIVE: follow the anchor's "of" chain to an object noun.
    if let Some(head) = partitive_object(tokens, anchor, scheme) {
        return Some(PatternMatch {
            pattern: DeterministicPattern::Partitive,
            resolution: Resolution::reference(head),
        });
    }

    // COPULAR: "X 'be' the one".
    if let Some(subject) = copular_subject(tokens, anchor, scheme) {
        return Some(PatternMatch {
            pattern: DeterministicPattern::Copular,
            resolution: Resolution::reference(subject),
        });
    }

    None
}

/// "NUM of NP": both arc styles are supported. PTB/spaCy style attaches
/// "of" to the anchor (prep) and the object to "of" (pobj); UD style
/// attaches the object noun to the anchor (nmod) with "of" as its case
/// child. Pronoun objects do not match (they need context to resolve).
fn partitive_object(tokens: &[Token], anchor: AnchorSpan, scheme: &TagScheme) -> Option<usize> {
    // PTB style: anchor -> of (prep) -> noun (pobj).
    for (of_idx, of_tok) in tokens.iter().enumerate() {
        if of_tok.lower != "of" {
            continue;
        }
        let of_in_anchor = of_tok
            .dep_head
            .map(|h| anchor.contains(h))
            .unwrap_or(false);
        if of_in_anchor {
            for (obj_idx, obj) in tokens.iter().enumerate() {
                if obj.dep_head == Some(of_idx) && !anchor.contains(obj_idx) {
                    if scheme.is_noun(&obj.pos) {
                        return Some(obj_idx);
                    }
                    if scheme.is_pronoun(&obj.pos) {
                        return None;
                    }
                }
            }
        }
    }
    // UD style: noun -> anchor (nmod) with a case child "of".
    for (obj_idx, obj) in tokens.iter().enumerate() {
        let attached = obj
            .dep_head
            .map(|h| anchor.contains(h))
            .unwrap_or(false);
        if !attached || !obj.dep_label.starts_with("nmod") {
            continue;
        }
        let has_of_case = tokens
            .iter()
            .any(|t| t.dep_head == Some(obj_idx) && t.lower == "of");
        if has_of_case {
            if scheme.is_noun(&obj.pos) {
                return Some(obj_idx);
            }
            if scheme.is_pronoun(&obj.pos) {
                return None;
            }
        }
    }
    None
}

/// "X 'be' the one": anchor is "one" preceded by "the"; the copula's
/// subject must be a common or proper noun.
fn copular_subject(tokens: &[Token], anchor: AnchorSpan, scheme: &TagScheme) -> Option<usize> {
    if anchor.len() != 1 || tokens[anchor.start].lower != "one" {
        return None;
    }
    let the_before = anchor
        .start
        .checked_sub(1)
        .map(|i| tokens[i].lower == "the")
        .unwrap_or(false);
    if !the_before {
        return None;
    }
    let is_be = |t: &Token| {
        BE_FORMS.contains(&t.lemma.as_str()) || BE_FORMS.contains(&t.lower.as_str())
    };
    let is_subj = |t: &Token| t.dep_label.starts_with("nsubj");

    // PTB style: the anchor attaches to a "be" verb that carries a noun subject.
    if let Some(head) = tokens[anchor.start].dep_head {
        if is_be(&tokens[head]) {
            for (i, t) in tokens.iter().enumerate() {
                if t.dep_head == Some(head) && is_subj(t) && scheme.is_noun(&t.pos) {
                    return Some(i);
                }
            }
        }
    }
    // UD style: the anchor heads both a "cop" child and the subject.
    let has_cop = tokens
        .iter()
        .any(|t| t.dep_head == Some(anchor.start) && t.dep_label == "cop" && is_be(t));
    if has_cop {
        for (i, t) in tokens.iter().enumerate() {
            if t.dep_head == Some(anchor.start) && is_subj(t) && scheme.is_noun(&t.pos) {
                return Some(i);
            }
        }
    }
    None
}
