//! Train and ablate the linear FH/not-FH classifier on a small corpus
//! labeled by the rule cascade.
//!
//! ```bash
//! cargo run -p nfh --example train_identifier
//! ```

use nfh::corpus::ExampleBuilder;
use nfh::identify::{
    classify_span, extract_identification_features, identify_rule_based, linear::TrainOptions,
    train_identifier, Ablation, PatternRegistry, TagScheme,
};

fn main() {
    // A small mixed corpus: headless numbers and ordinary noun-modifying
    // numbers, each line carrying its candidate anchor.
    let mut corpus = Vec::new();
    for i in 0..12 {
        corpus.push(
            ExampleBuilder::new(format!("pos{i}/a"))
                .sentence(
                    &format!("w{i}|VB|-1|root me|PRP|0|dative {}|CD|0|dobj .|.|0|punct", i + 2),
                    Some(&format!("(S (VP (VB w{i}) (NP (PRP me)) (NP (CD {}))) (. .))", i + 2)),
                )
                .anchor(2, 2)
                .build()
                .unwrap(),
        );
        corpus.push(
            ExampleBuilder::new(format!("neg{i}/a"))
                .sentence(
                    &format!(
                        "saw|VBD|-1|root {}|CD|2|nummod thing{i}s|NNS|0|dobj .|.|0|punct",
                        i + 2
                    ),
                    Some(&format!(
                        "(S (VP (VBD saw) (NP (CD {}) (NNS thing{i}s))) (. .))",
                        i + 2
                    )),
                )
                .anchor(1, 1)
                .build()
                .unwrap(),
        );
    }

    let registry = PatternRegistry::default();
    let scheme = TagScheme::default();
    let options = TrainOptions { hash_bits: 16, ..TrainOptions::default() };

    for ablation in [Ablation::Full, Ablation::NoDep, Ablation::NoPos, Ablation::NoDepPos] {
        let dataset: Vec<_> = corpus
            .iter()
            .map(|ex| {
                let label = identify_rule_based(ex, &registry, &scheme)
                    .unwrap()
                    .contains(&ex.anchor);
                (
                    extract_identification_features(ex, ex.anchor, ablation, options.hash_bits),
                    label,
                )
            })
            .collect();
        let model = train_identifier(&dataset, &options).unwrap();
        let correct = dataset
            .iter()
            .filter(|(fv, y)| classify_span(&model, fv).0 == *y)
            .count();
        println!(
            "{:<9} training accuracy {:>5.1}%  ({} features hashed into 2^{})",
            ablation.name(),
            100.0 * correct as f64 / dataset.len() as f64,
            dataset[0].0.indices.len(),
            options.hash_bits,
        );
    }
}
