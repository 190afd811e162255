//! Resolution baselines: the first/last/closest-noun pickers and the
//! linear classifier over hand-crafted templates.
//!
//! ```bash
//! cargo run -p nfh --example baselines
//! ```

use nfh::corpus::{Example, ExampleBuilder, ImplicitClass, Resolution};
use nfh::eval::{noun_baseline, noun_baseline_accuracies, LinearResolver, NounStrategy};
use nfh::identify::{linear::TrainOptions, TagScheme};

fn corpus() -> Vec<Example> {
    let mut out = Vec::new();
    // References whose head is the noun nearest the anchor.
    for i in 0..6 {
        out.push(
            ExampleBuilder::new(format!("demo{i}/ref"))
                .sentence(
                    &format!(
                        "the|DT|1|det crate{i}|NN|2|nsubj broke|VBD|-1|root so|RB|4|advmod grab|VB|2|conj one|CD|4|dobj today|RB|4|advmod"
                    ),
                    None,
                )
                .anchor(5, 5)
                .gold_reference(&[1])
                .build()
                .unwrap(),
        );
    }
    // Implicit years: digit anchors in short copular sentences.
    for i in 0..6 {
        out.push(
            ExampleBuilder::new(format!("demo{i}/year"))
                .sentence(
                    &format!("w{i}|NN|1|nsubj is|VBZ|-1|root {}|CD|1|attr", 1960 + i),
                    None,
                )
                .anchor(2, 2)
                .gold_implicit(ImplicitClass::Year)
                .build()
                .unwrap(),
        );
    }
    out
}

fn main() {
    let corpus = corpus();
    let scheme = TagScheme::default();

    println!("noun pickers on one example:");
    let ex = &corpus[0];
    let words: Vec<&str> = ex.tokens.iter().map(|t| t.surface.as_str()).collect();
    println!("  {}", words.join(" "));
    for strategy in [NounStrategy::First, NounStrategy::Last, NounStrategy::Closest] {
        let pick = noun_baseline(ex, ex.anchor, strategy, &scheme);
        println!(
            "  {:<8} -> {}",
            strategy.name(),
            pick.map(|i| words[i]).unwrap_or("(no noun)")
        );
    }

    println!("\nnoun-baseline accuracies over the Reference cases:");
    for (strategy, acc) in noun_baseline_accuracies(&corpus, &scheme) {
        println!("  {:<8} {:.1}%", strategy.name(), acc * 100.0);
    }

    let options = TrainOptions { hash_bits: 14, epochs: 20, ..TrainOptions::default() };
    let model = LinearResolver::train(&corpus, &options, &scheme).unwrap();
    let correct = corpus
        .iter()
        .filter(|ex| {
            let pred = model.predict(ex, &scheme);
            nfh::eval::head_correct(ex, &pred, ex.gold.as_ref().unwrap())
        })
        .count();
    println!(
        "\nlinear baseline: {}/{} heads recovered on its own training data",
        correct,
        corpus.len()
    );
    let sample = &corpus[6];
    match model.predict(sample, &scheme) {
        Resolution::Implicit(c) => println!("  digit anchor `{}` -> {c}", sample.anchor_text()),
        Resolution::Reference { heads } => {
            println!("  digit anchor -> reference {}", heads[0])
        }
    }
}
