//! Numeric-expression detection over pre-tokenized text.
//!
//! Candidate anchors are maximal contiguous spans of numeric material:
//! digit strings (with `,` `.` `/` separators), number words composed via a
//! small lexicon (units, teens, tens, scale words), hyphenated compounds
//! ("twenty-one") and ordinals. The connective "and" joins a span only
//! between a scale word and a following number word ("thousand and seventy
//! six"). Ordinals and numbers inside names are detected here and filtered
//! downstream by the identifiers.

use super::{AnchorSpan, Token};

const UNITS: [(&str, f64); 10] = [
    ("zero", 0.0),
    ("one", 1.0),
    ("two", 2.0),
    ("three", 3.0),
    ("four", 4.0),
    ("five", 5.0),
    ("six", 6.0),
    ("seven", 7.0),
    ("eight", 8.0),
    ("nine", 9.0),
];

const TEENS: [(&str, f64); 10] = [
    ("ten", 10.0),
    ("eleven", 11.0),
    ("twelve", 12.0),
    ("thirteen", 13.0),
    ("fourteen", 14.0),
    ("fifteen", 15.0),
    ("sixteen", 16.0),
    ("seventeen", 17.0),
    ("eighteen", 18.0),
    ("nineteen", 19.0),
];

const TENS: [(&str, f64); 8] = [
    ("twenty", 20.0),
    ("thirty", 30.0),
    ("forty", 40.0),
    ("fifty", 50.0),
    ("sixty", 60.0),
    ("seventy", 70.0),
    ("eighty", 80.0),
    ("ninety", 90.0),
];

const SCALES: [(&str, f64); 4] = [
    ("hundred", 100.0),
    ("thousand", 1_000.0),
    ("million", 1_000_000.0),
    ("billion", 1_000_000_000.0),
];

const ORDINALS: [(&str, f64); 22] = [
    ("first", 1.0),
    ("second", 2.0),
    ("third", 3.0),
    ("fourth", 4.0),
    ("fifth", 5.0),
    ("sixth", 6.0),
    ("seventh", 7.0),
    ("eighth", 8.0),
    ("ninth", 9.0),
    ("tenth", 10.0),
    ("eleventh", 11.0),
    ("twelfth", 12.0),
    ("thirteenth", 13.0),
    ("fourteenth", 14.0),
    ("fifteenth", 15.0),
    ("sixteenth", 16.0),
    ("seventeenth", 17.0),
    ("eighteenth", 18.0),
    ("nineteenth", 19.0),
    ("twentieth", 20.0),
    ("thirtieth", 30.0),
    ("hundredth", 100.0),
];

#[derive(Debug, Clone, Copy, PartialEq)]
enum WordKind {
    Unit(f64),
    Teen(f64),
    Ten(f64),
    Scale(f64),
    Ordinal(f64),
    /// Hyphenated tens-unit compound, e.g. "twenty-one".
    Compound(f64),
    Digits(f64),
}

fn lookup(table: &[(&str, f64)], w: &str) -> Option<f64> {
    table.iter().find(|(name, _)| *name == w).map(|&(_, v)| v)
}

fn classify_word(lower: &str) -> Option<WordKind> {
    if let Some(v) = digit_string_value(lower) {
        return Some(WordKind::Digits(v));
    }
    if let Some(v) = lookup(&UNITS, lower) {
        return Some(WordKind::Unit(v));
    }
    if let Some(v) = lookup(&TEENS, lower) {
        return Some(WordKind::Teen(v));
    }
    if let Some(v) = lookup(&TENS, lower) {
        return Some(WordKind::Ten(v));
    }
    if let Some(v) = lookup(&SCALES, lower) {
        return Some(WordKind::Scale(v));
    }
    if let Some(v) = lookup(&ORDINALS, lower) {
        return Some(WordKind::Ordinal(v));
    }
    if let Some((left, right)) = lower.split_once('-') {
        if let (Some(t), Some(u)) = (lookup(&TENS, left), lookup(&UNITS, right)) {
            if u >= 1.0 {
                return Some(WordKind::Compound(t + u));
            }
        }
    }
    None
}

/// Digit strings: "42", "1,000", "3.14", "3/4", and digit ordinals "1st".
fn digit_string_value(w: &str) -> Option<f64> {
    let first = w.chars().next()?;
    if !first.is_ascii_digit() {
        return None;
    }
    // Digit ordinal suffix.
    for suffix in ["st", "nd", "rd", "th"] {
        if let Some(stem) = w.strip_suffix(suffix) {
            if !stem.is_empty() && stem.chars().all(|c| c.is_ascii_digit()) {
                return stem.parse::<f64>().ok();
            }
        }
    }
    if !w.chars().all(|c| c.is_ascii_digit() || matches!(c, ',' | '.' | '/')) {
        return None;
    }
    if let Some((num, den)) = w.split_once('/') {
        let n: f64 = num.replace(',', "").parse().ok()?;
        let d: f64 = den.replace(',', "").parse().ok()?;
        if d == 0.0 {
            return None;
        }
        return Some(n / d);
    }
    w.replace(',', "").parse::<f64>().ok()
}

/// Whether a token is numeric material on its own.
pub fn is_numeric_token(token: &Token) -> bool {
    classify_word(&token.lower).is_some()
}

/// Whether the token is written with digits rather than words.
pub fn is_digit_token(token: &Token) -> bool {
    matches!(classify_word(&token.lower), Some(WordKind::Digits(_)))
}

/// Maximal non-overlapping numeric spans, sorted by start.
pub fn detect_numeric_spans(tokens: &[Token]) -> Vec<AnchorSpan> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if classify_word(&tokens[i].lower).is_none() {
            i += 1;
            continue;
        }
        let start = i;
        let mut end = i;
        let mut j = i + 1;
        while j < tokens.len() {
            let lower = tokens[j].lower.as_str();
            if classify_word(lower).is_some() {
                end = j;
                j += 1;
            } else if lower == "and"
                && j + 1 < tokens.len()
                && matches!(classify_word(&tokens[end].lower), Some(WordKind::Scale(_)))
                && classify_word(&tokens[j + 1].lower).is_some()
            {
                // "thousand and seventy" glues only between scale groups.
                end = j + 1;
                j += 2;
            } else {
                break;
            }
        }
        spans.push(AnchorSpan::new(start, end));
        i = end + 1;
    }
    spans
}

/// Numeric value of a span, for feature binning. Digit strings, word
/// composition and hyphen compounds all evaluate; returns `None` when no
/// token contributes a value.
pub fn span_value(tokens: &[Token], span: AnchorSpan) -> Option<f64> {
    let mut current = 0.0f64;
    let mut total = 0.0f64;
    let mut seen = false;
    for tok in &tokens[span.start..=span.end] {
        let Some(kind) = classify_word(&tok.lower) else {
            continue; // interior "and"
        };
        seen = true;
        match kind {
            WordKind::Unit(v)
            | WordKind::Teen(v)
            | WordKind::Ten(v)
            | WordKind::Ordinal(v)
            | WordKind::Compound(v)
            | WordKind::Digits(v) => current += v,
            WordKind::Scale(s) => {
                let base = if current == 0.0 { 1.0 } else { current };
                if s == 100.0 {
                    current = base * 100.0;
                } else {
                    total += base * s;
                    current = 0.0;
                }
            }
        }
    }
    seen.then_some(total + current)
}

/// Whether every surface token of the span is digit-shaped.
pub fn span_is_digits(tokens: &[Token], span: AnchorSpan) -> bool {
    tokens[span.start..=span.end].iter().all(is_digit_token)
}
