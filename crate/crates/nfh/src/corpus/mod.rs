//! Data model, file ingestion, numeric-span detection and corpus splitting.
//!
//! The toolkit never tokenizes or parses raw text: every [`Example`] arrives
//! pre-tokenized with POS tags, dependency arcs, lemmas and (optionally) one
//! constituency tree per sentence. The JSONL wire format is documented in
//! [`jsonl`].

mod builder;
pub mod embeddings;
pub mod jsonl;
pub mod numbers;
pub mod split;
pub mod trees;

pub use builder::ExampleBuilder;
pub use embeddings::{load_embeddings, EmbeddingTable};
pub use numbers::detect_numeric_spans;
pub use split::partition_by_source;
pub use trees::ConstituencyNode;

use crate::{NfhError, Result};

/// One token of a pre-parsed context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Lowercased surface, derived at construction.
    pub lower: String,
    /// POS tag (PTB or UD tagset; see [`crate::identify::rules::TagScheme`]).
    pub pos: String,
    /// Index of the syntactic parent within the same sentence, `None` for
    /// the root.
    pub dep_head: Option<usize>,
    pub dep_label: String,
    pub lemma: String,
}

impl Token {
    pub fn new(
        surface: impl Into<String>,
        pos: impl Into<String>,
        dep_head: Option<usize>,
        dep_label: impl Into<String>,
        lemma: impl Into<String>,
    ) -> Self {
        let surface = surface.into();
        let lower = surface.to_lowercase();
        Token {
            surface,
            lower,
            pos: pos.into(),
            dep_head,
            dep_label: dep_label.into(),
            lemma: lemma.into(),
        }
    }
}

/// Contiguous token range `[start, end]` (inclusive) holding one numeric
/// expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnchorSpan {
    pub start: usize,
    pub end: usize,
}

impl AnchorSpan {
    pub fn new(start: usize, end: usize) -> Self {
        AnchorSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, idx: usize) -> bool {
        idx >= self.start && idx <= self.end
    }

    /// Token distance from `idx` to the nearest span boundary (0 inside).
    pub fn distance_to(&self, idx: usize) -> usize {
        if idx < self.start {
            self.start - idx
        } else if idx > self.end {
            idx - self.end
        } else {
            0
        }
    }

    /// The covered token whose dependency head lies outside the span (the
    /// span's internal root); the first such token, else the span start.
    pub fn syntactic_root(&self, tokens: &[Token]) -> usize {
        for i in self.start..=self.end {
            match tokens[i].dep_head {
                Some(h) if self.contains(h) => continue,
                _ => return i,
            }
        }
        self.start
    }
}

/// The six implicit head categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImplicitClass {
    Year,
    Age,
    Currency,
    People,
    Time,
    Other,
}

/// Canonical class order; fixed everywhere (candidate slots, confusion
/// matrix rows, checkpoint layout).
pub const IMPLICIT_CLASSES: [ImplicitClass; 6] = [
    ImplicitClass::Year,
    ImplicitClass::Age,
    ImplicitClass::Currency,
    ImplicitClass::People,
    ImplicitClass::Time,
    ImplicitClass::Other,
];

impl ImplicitClass {
    pub fn name(&self) -> &'static str {
        match self {
            ImplicitClass::Year => "YEAR",
            ImplicitClass::Age => "AGE",
            ImplicitClass::Currency => "CURRENCY",
            ImplicitClass::People => "PEOPLE",
            ImplicitClass::Time => "TIME",
            ImplicitClass::Other => "OTHER",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        IMPLICIT_CLASSES.iter().copied().find(|c| c.name() == name)
    }

    /// Position in [`IMPLICIT_CLASSES`].
    pub fn index(&self) -> usize {
        IMPLICIT_CLASSES.iter().position(|c| c == self).unwrap()
    }
}

impl std::fmt::Display for ImplicitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A resolved head: either token(s) in the context or an implicit category.
///
/// Gold labels may carry several acceptable reference heads; predictions
/// carry exactly one. `heads` is never empty and never intersects the
/// anchor span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Reference { heads: Vec<usize> },
    Implicit(ImplicitClass),
}

impl Resolution {
    pub fn reference(head: usize) -> Self {
        Resolution::Reference { heads: vec![head] }
    }

    pub fn is_reference(&self) -> bool {
        matches!(self, Resolution::Reference { .. })
    }

    /// Primary head token for a Reference resolution.
    pub fn ref_token(&self) -> Option<usize> {
        match self {
            Resolution::Reference { heads } => heads.first().copied(),
            Resolution::Implicit(_) => None,
        }
    }

    pub fn implicit_class(&self) -> Option<ImplicitClass> {
        match self {
            Resolution::Implicit(c) => Some(*c),
            Resolution::Reference { .. } => None,
        }
    }
}

/// One annotated context: tokens, sentence and dialog-turn boundaries,
/// optional constituency trees, the anchor span and an optional gold label.
///
/// Sentence and turn ranges are half-open `[start, end)` and tile the token
/// sequence; the anchor is inclusive `[start, end]` and lies inside exactly
/// one sentence. The context holds at most two turns before and one turn
/// after the anchor's turn.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub id: String,
    pub tokens: Vec<Token>,
    pub sentence_bounds: Vec<(usize, usize)>,
    /// `(speaker id, start, end)` per dialog turn.
    pub turn_bounds: Vec<(u32, usize, usize)>,
    /// One tree per sentence when constituency parses are available.
    pub trees: Option<Vec<ConstituencyNode>>,
    pub anchor: AnchorSpan,
    pub gold: Option<Resolution>,
    /// Optional entity spans (half-open), used only by the linear
    /// resolution baseline's entity feature.
    pub entities: Vec<(usize, usize)>,
}

impl Example {
    /// Index of the sentence containing token `idx`.
    pub fn sentence_of(&self, idx: usize) -> Option<usize> {
        self.sentence_bounds
            .iter()
            .position(|&(s, e)| idx >= s && idx < e)
    }

    /// Index of the dialog turn containing token `idx`.
    pub fn turn_of(&self, idx: usize) -> Option<usize> {
        self.turn_bounds
            .iter()
            .position(|&(_, s, e)| idx >= s && idx < e)
    }

    /// Source-work key: the id prefix before the first '/'.
    pub fn source_key(&self) -> &str {
        self.id.split('/').next().unwrap_or(&self.id)
    }

    /// Lowercased anchor surface, tokens joined by single spaces.
    pub fn anchor_text(&self) -> String {
        self.tokens[self.anchor.start..=self.anchor.end]
            .iter()
            .map(|t| t.lower.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The anchor span's internal root token.
    pub fn anchor_root(&self) -> usize {
        self.anchor.syntactic_root(&self.tokens)
    }

    /// Validate every documented invariant; called by all constructors.
    pub fn validate(&self) -> Result<()> {
        let n = self.tokens.len();
        if n == 0 {
            return Err(NfhError::validation("tokens", "token sequence is empty"));
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if t.lower != t.surface.to_lowercase() {
                return Err(NfhError::validation(
                    "tokens",
                    format!("token {i}: lower is not lowercase(surface)"),
                ));
            }
        }
        validate_tiling("sents", n, self.sentence_bounds.iter().copied())?;
        validate_tiling("turns", n, self.turn_bounds.iter().map(|&(_, s, e)| (s, e)))?;

        // Dependency heads stay inside the token's own sentence.
        for &(s, e) in &self.sentence_bounds {
            for i in s..e {
                if let Some(h) = self.tokens[i].dep_head {
                    if h < s || h >= e {
                        return Err(NfhError::validation(
                            "tokens",
                            format!("token {i}: dep_head {h} outside its sentence [{s},{e})"),
                        ));
                    }
                }
            }
        }

        if self.anchor.start > self.anchor.end || self.anchor.end >= n {
            return Err(NfhError::validation(
                "anchor",
                format!("span [{},{}] out of range", self.anchor.start, self.anchor.end),
            ));
        }
        let covering = self
            .sentence_bounds
            .iter()
            .filter(|&&(s, e)| self.anchor.start >= s && self.anchor.end < e)
            .count();
        if covering != 1 {
            return Err(NfhError::validation(
                "anchor",
                "anchor span must lie inside exactly one sentence",
            ));
        }
        // Every covered token is numeric material ("and" may glue scale
        // groups in the interior).
        for idx in self.anchor.start..=self.anchor.end {
            let tok = &self.tokens[idx];
            let interior = idx > self.anchor.start && idx < self.anchor.end;
            if !numbers::is_numeric_token(tok) && !(interior && tok.lower == "and") {
                return Err(NfhError::validation(
                    "anchor",
                    format!("token {idx} `{}` is not numeric material", tok.surface),
                ));
            }
        }

        // Context window around the anchor's turn.
        let anchor_turn = self
            .turn_of(self.anchor.start)
            .ok_or_else(|| NfhError::validation("turns", "anchor not covered by any turn"))?;
        if anchor_turn > 2 {
            return Err(NfhError::validation(
                "turns",
                "more than two dialog turns before the anchor's turn",
            ));
        }
        if self.turn_bounds.len() - 1 - anchor_turn > 1 {
            return Err(NfhError::validation(
                "turns",
                "more than one dialog turn after the anchor's turn",
            ));
        }

        if let Some(trees) = &self.trees {
            if trees.len() != self.sentence_bounds.len() {
                return Err(NfhError::validation(
                    "trees",
                    format!(
                        "{} trees for {} sentences",
                        trees.len(),
                        self.sentence_bounds.len()
                    ),
                ));
            }
            for (tree, &(s, e)) in trees.iter().zip(&self.sentence_bounds) {
                let leaves = tree.leaf_indices();
                let expected: Vec<usize> = (s..e).collect();
                if leaves != expected {
                    return Err(NfhError::validation(
                        "trees",
                        format!("tree leaves do not cover sentence [{s},{e}) exactly once"),
                    ));
                }
            }
        }

        if let Some(gold) = &self.gold {
            match gold {
                Resolution::Reference { heads } => {
                    if heads.is_empty() {
                        return Err(NfhError::validation("gold", "reference with no heads"));
                    }
                    for &h in heads {
                        if h >= n {
                            return Err(NfhError::validation(
                                "gold",
                                format!("head {h} out of range"),
                            ));
                        }
                        if self.anchor.contains(h) {
                            return Err(NfhError::validation(
                                "gold",
                                format!("head {h} lies inside the anchor span"),
                            ));
                        }
                    }
                }
                Resolution::Implicit(_) => {}
            }
        }

        for &(s, e) in &self.entities {
            if s >= e || e > n {
                return Err(NfhError::validation(
                    "entities",
                    format!("bad entity span [{s},{e})"),
                ));
            }
        }
        Ok(())
    }
}

fn validate_tiling(
    field: &str,
    n: usize,
    ranges: impl Iterator<Item = (usize, usize)>,
) -> Result<()> {
    let mut cursor = 0usize;
    let mut any = false;
    for (s, e) in ranges {
        any = true;
        if s != cursor || e <= s {
            return Err(NfhError::validation(
                field,
                format!("range [{s},{e}) does not tile the token sequence at {cursor}"),
            ));
        }
        cursor = e;
    }
    if !any || cursor != n {
        return Err(NfhError::validation(
            field,
            format!("ranges cover [0,{cursor}) but there are {n} tokens"),
        ));
    }
    Ok(())
}
