//! Programmatic example construction, mainly for tests and demos.

use super::{trees, AnchorSpan, ConstituencyNode, Example, ImplicitClass, Resolution, Token};
use crate::{NfhError, Result};

/// Builds a validated [`Example`] from compact per-sentence token specs.
///
/// Each token is written `surface|POS|head|label` or
/// `surface|POS|head|label|lemma` (lemma defaults to the lowercased
/// surface). Heads are sentence-relative, `-1` for the root:
///
/// ```
/// use nfh::corpus::ExampleBuilder;
/// let ex = ExampleBuilder::new("demo/1")
///     .sentence("No|DT|1|det one|CD|2|nsubj cares|VBZ|-1|root .|.|2|punct",
///               Some("(S (NP (DT No) (CD one)) (VP (VBZ cares)) (. .))"))
///     .anchor(1, 1)
///     .gold_implicit(nfh::corpus::ImplicitClass::People)
///     .build()
///     .unwrap();
/// assert_eq!(ex.anchor_text(), "one");
/// ```
#[derive(Debug, Clone)]
pub struct ExampleBuilder {
    id: String,
    tokens: Vec<Token>,
    sentence_bounds: Vec<(usize, usize)>,
    turn_starts: Vec<usize>,
    tree_texts: Vec<Option<String>>,
    anchor: Option<AnchorSpan>,
    gold: Option<Resolution>,
    entities: Vec<(usize, usize)>,
}

impl ExampleBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        ExampleBuilder {
            id: id.into(),
            tokens: Vec::new(),
            sentence_bounds: Vec::new(),
            turn_starts: vec![0],
            tree_texts: Vec::new(),
            anchor: None,
            gold: None,
            entities: Vec::new(),
        }
    }

    /// Append one sentence with an optional bracketed tree.
    pub fn sentence(mut self, spec: &str, tree: Option<&str>) -> Self {
        let start = self.tokens.len();
        for field in spec.split_whitespace() {
            let parts: Vec<&str> = field.split('|').collect();
            let (surface, pos, head, label, lemma) = match parts.as_slice() {
                [s, p, h, d] => (*s, *p, *h, *d, None),
                [s, p, h, d, l] => (*s, *p, *h, *d, Some(*l)),
                _ => {
                    // Defer the error to build() by recording a marker token.
                    ("\u{0}bad-spec", "X", "-1", "dep", None)
                }
            };
            let head_idx: i64 = head.parse().unwrap_or(-2);
            let dep_head = if head_idx < 0 {
                None
            } else {
                Some(start + head_idx as usize)
            };
            let lemma = lemma
                .map(str::to_string)
                .unwrap_or_else(|| surface.to_lowercase());
            self.tokens.push(Token::new(surface, pos, dep_head, label, lemma));
        }
        let end = self.tokens.len();
        self.sentence_bounds.push((start, end));
        self.tree_texts.push(tree.map(str::to_string));
        self
    }

    /// Subsequent sentences belong to a new dialog turn (next speaker id).
    pub fn new_turn(mut self) -> Self {
        self.turn_starts.push(self.tokens.len());
        self
    }

    pub fn anchor(mut self, start: usize, end: usize) -> Self {
        self.anchor = Some(AnchorSpan::new(start, end));
        self
    }

    pub fn gold_implicit(mut self, class: ImplicitClass) -> Self {
        self.gold = Some(Resolution::Implicit(class));
        self
    }

    pub fn gold_reference(mut self, heads: &[usize]) -> Self {
        self.gold = Some(Resolution::Reference { heads: heads.to_vec() });
        self
    }

    pub fn entity(mut self, start: usize, end: usize) -> Self {
        self.entities.push((start, end));
        self
    }

    pub fn build(self) -> Result<Example> {
        if self.tokens.iter().any(|t| t.surface.starts_with('\u{0}')) {
            return Err(NfhError::validation(
                "tokens",
                "token spec must be surface|POS|head|label[|lemma]",
            ));
        }
        let anchor = self
            .anchor
            .ok_or_else(|| NfhError::validation("anchor", "anchor not set"))?;

        let trees = if self.tree_texts.iter().all(Option::is_none) {
            None
        } else if self.tree_texts.iter().any(Option::is_none) {
            return Err(NfhError::validation(
                "trees",
                "either every sentence has a tree or none does",
            ));
        } else {
            let mut parsed: Vec<ConstituencyNode> = Vec::new();
            for (text, &(s, _)) in self.tree_texts.iter().zip(&self.sentence_bounds) {
                parsed.push(trees::parse_tree(text.as_ref().unwrap(), s)?);
            }
            Some(parsed)
        };

        let mut turn_bounds = Vec::new();
        for (speaker, window) in self.turn_starts.windows(2).enumerate() {
            turn_bounds.push((speaker as u32, window[0], window[1]));
        }
        turn_bounds.push((
            (self.turn_starts.len() - 1) as u32,
            *self.turn_starts.last().unwrap(),
            self.tokens.len(),
        ));

        let example = Example {
            id: self.id,
            tokens: self.tokens,
            sentence_bounds: self.sentence_bounds,
            turn_bounds,
            trees,
            anchor,
            gold: self.gold,
            entities: self.entities,
        };
        example.validate()?;
        Ok(example)
    }
}
