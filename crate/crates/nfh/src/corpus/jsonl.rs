//! JSONL wire format for examples and predictions.
//!
//! One JSON object per line:
//!
//! ```json
//! {"id": "show123/ep1/scene2/ex7",
//!  "tokens": [{"t": "No", "p": "DT", "h": 1, "d": "neg", "l": "no"}, ...],
//!  "sents": [[0, 6]],
//!  "turns": [[0, 0, 6]],
//!  "trees": ["(S (NP (DT No) (CD one)) ...)"],
//!  "anchor": [1, 1],
//!  "gold": {"kind": "implicit", "class": "PEOPLE"}}
//! ```
//!
//! `h` is the in-sentence head index, -1 for the root. `sents`/`turns` use
//! half-open ranges; `anchor` is inclusive. `gold` is `null` (or absent)
//! for unlabeled lines; reference golds carry `"heads": [k, ...]`. An
//! optional `"entities": [[s,e], ...]` field is accepted.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{trees, AnchorSpan, ConstituencyNode, Example, ImplicitClass, Resolution, Token};
use crate::{NfhError, Result};

#[derive(Serialize, Deserialize)]
struct RawToken {
    t: String,
    p: String,
    h: i64,
    d: String,
    l: String,
}

#[derive(Serialize, Deserialize)]
struct RawExample {
    id: String,
    tokens: Vec<RawToken>,
    sents: Vec<(usize, usize)>,
    turns: Vec<(u32, usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trees: Option<Vec<String>>,
    anchor: (usize, usize),
    #[serde(default)]
    gold: Option<RawGold>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    entities: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawGold {
    Reference { heads: Vec<usize> },
    Implicit { class: String },
}

/// Parse and validate one JSONL record.
pub fn parse_example_record(line: &str) -> Result<Example> {
    let raw: RawExample = serde_json::from_str(line)
        .map_err(|e| NfhError::format(format!("bad example record: {e}")))?;

    let tokens: Vec<Token> = raw
        .tokens
        .iter()
        .map(|rt| {
            let head = if rt.h < 0 { None } else { Some(rt.h as usize) };
            Token::new(rt.t.clone(), rt.p.clone(), head, rt.d.clone(), rt.l.clone())
        })
        .collect();

    let trees = match raw.trees {
        None => None,
        Some(texts) => {
            if texts.len() != raw.sents.len() {
                return Err(NfhError::validation(
                    "trees",
                    format!("{} trees for {} sentences", texts.len(), raw.sents.len()),
                ));
            }
            let mut parsed = Vec::with_capacity(texts.len());
            for (text, &(s, _)) in texts.iter().zip(&raw.sents) {
                parsed.push(trees::parse_tree(text, s)?);
            }
            Some(parsed)
        }
    };

    let gold = match raw.gold {
        None => None,
        Some(RawGold::Reference { heads }) => Some(Resolution::Reference { heads }),
        Some(RawGold::Implicit { class }) => {
            let class = ImplicitClass::from_name(&class).ok_or_else(|| {
                NfhError::validation("gold", format!("unknown implicit class `{class}`"))
            })?;
            Some(Resolution::Implicit(class))
        }
    };

    let example = Example {
        id: raw.id,
        tokens,
        sentence_bounds: raw.sents,
        turn_bounds: raw.turns,
        trees,
        anchor: AnchorSpan::new(raw.anchor.0, raw.anchor.1),
        gold,
        entities: raw.entities,
    };
    example.validate()?;
    Ok(example)
}

/// Serialize an example to one JSON line (no trailing newline).
pub fn serialize_example(example: &Example) -> String {
    let raw = RawExample {
        id: example.id.clone(),
        tokens: example
            .tokens
            .iter()
            .map(|t| RawToken {
                t: t.surface.clone(),
                p: t.pos.clone(),
                h: t.dep_head.map(|h| h as i64).unwrap_or(-1),
                d: t.dep_label.clone(),
                l: t.lemma.clone(),
            })
            .collect(),
        sents: example.sentence_bounds.clone(),
        turns: example.turn_bounds.clone(),
        trees: example
            .trees
            .as_ref()
            .map(|ts| ts.iter().map(ConstituencyNode::render).collect()),
        anchor: (example.anchor.start, example.anchor.end),
        gold: example.gold.as_ref().map(|g| match g {
            Resolution::Reference { heads } => RawGold::Reference { heads: heads.clone() },
            Resolution::Implicit(c) => RawGold::Implicit { class: c.name().to_string() },
        }),
        entities: example.entities.clone(),
    };
    serde_json::to_string(&raw).expect("example serialization cannot fail")
}

/// Load a whole corpus, attaching 1-based line numbers to errors. Blank
/// lines are skipped.
pub fn load_corpus(path: &Path) -> Result<Vec<Example>> {
    let file = std::fs::File::open(path)
        .map_err(|e| NfhError::validation("in", format!("cannot open {}: {e}", path.display())))?;
    let reader = std::io::BufReader::new(file);
    let mut examples = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| NfhError::io(path.display().to_string(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        examples.push(parse_example_record(&line).map_err(|e| e.with_line(i + 1))?);
    }
    Ok(examples)
}

/// Write a corpus back out, one record per line.
pub fn write_corpus(path: &Path, examples: &[Example]) -> Result<()> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| NfhError::io(path.display().to_string(), e))?;
    for ex in examples {
        writeln!(file, "{}", serialize_example(ex))
            .map_err(|e| NfhError::io(path.display().to_string(), e))?;
    }
    Ok(())
}

/// One prediction line: which anchor of which example resolved to what.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub id: String,
    pub anchor: (usize, usize),
    pub resolution: RawResolution,
    /// `"pattern"` for deterministic matches, `"model"` for neural picks.
    pub source: String,
}

/// Serde-facing resolution; mirrors the gold encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RawResolution {
    Reference { heads: Vec<usize> },
    Implicit { class: String },
}

impl RawResolution {
    pub fn from_resolution(r: &Resolution) -> Self {
        match r {
            Resolution::Reference { heads } => RawResolution::Reference { heads: heads.clone() },
            Resolution::Implicit(c) => RawResolution::Implicit { class: c.name().to_string() },
        }
    }

    pub fn to_resolution(&self) -> Result<Resolution> {
        match self {
            RawResolution::Reference { heads } => {
                if heads.is_empty() {
                    return Err(NfhError::format("reference resolution with no heads"));
                }
                Ok(Resolution::Reference { heads: heads.clone() })
            }
            RawResolution::Implicit { class } => ImplicitClass::from_name(class)
                .map(Resolution::Implicit)
                .ok_or_else(|| NfhError::format(format!("unknown implicit class `{class}`"))),
        }
    }
}

/// Load a predictions file written by `nfh resolve`.
pub fn load_predictions(path: &Path) -> Result<Vec<PredictionRecord>> {
    let file = std::fs::File::open(path)
        .map_err(|e| NfhError::validation("pred", format!("cannot open {}: {e}", path.display())))?;
    let reader = std::io::BufReader::new(file);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| NfhError::io(path.display().to_string(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: PredictionRecord = serde_json::from_str(&line)
            .map_err(|e| NfhError::format_at(i + 1, format!("bad prediction record: {e}")))?;
        out.push(rec);
    }
    Ok(out)
}
