//! Numeric-span detection over pre-tokenized sentences.
//!
//! ```bash
//! cargo run -p nfh --example detect_numbers
//! ```

use nfh::corpus::{detect_numeric_spans, numbers, Token};

fn tokens(words: &[&str]) -> Vec<Token> {
    words
        .iter()
        .map(|w| Token::new(*w, "X", None, "dep", w.to_lowercase()))
        .collect()
}

fn main() {
    let sentences: Vec<Vec<Token>> = vec![
        tokens(&["thirty", "six", "chairs"]),
        tokens(&["I", "paid", "1,200", "for", "it"]),
        tokens(&[
            "Fifteen", "million", "sixty", "one", "thousand", "and", "seventy", "six", ".",
        ]),
        tokens(&["the", "first", "time"]),
        tokens(&["one", "and", "two", "are", "numbers"]),
        tokens(&["hello", "world"]),
    ];

    for toks in &sentences {
        let text: Vec<&str> = toks.iter().map(|t| t.surface.as_str()).collect();
        println!("{}", text.join(" "));
        let spans = detect_numeric_spans(toks);
        if spans.is_empty() {
            println!("  (no numeric spans)");
        }
        for span in spans {
            let surface: Vec<&str> = text[span.start..=span.end].to_vec();
            let value = numbers::span_value(toks, span)
                .map(|v| format!("{v}"))
                .unwrap_or_else(|| "?".to_string());
            let shape = if numbers::span_is_digits(toks, span) { "DIGIT" } else { "WORD" };
            println!(
                "  [{}, {}] `{}`  value={value} shape={shape}",
                span.start,
                span.end,
                surface.join(" ")
            );
        }
        println!();
    }
}
