//! Train the neural resolver on a tiny synthetic corpus and watch it
//! memorize: contextualized BiLSTM scoring over tokens plus the six
//! implicit-class embeddings.
//!
//! ```bash
//! cargo run --release -p nfh --example train_resolver
//! ```

use nfh::corpus::{EmbeddingTable, ExampleBuilder, ImplicitClass, Resolution};
use nfh::resolve::neural::{train_resolver, ResolverConfig, TrainConfig};
use nfh::rng::Rng;

fn main() {
    // Six examples: three implicit classes, three references.
    let corpus = vec![
        ExampleBuilder::new("toy0/x")
            .sentence("I|PRP|1|nsubj am|VBP|-1|root 42|CD|1|attr .|.|1|punct", None)
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::Age)
            .build()
            .unwrap(),
        ExampleBuilder::new("toy1/x")
            .sentence(
                "welcome|VB|-1|root to|IN|0|prep 1969|CD|1|pobj !|.|0|punct",
                None,
            )
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::Year)
            .build()
            .unwrap(),
        ExampleBuilder::new("toy2/x")
            .sentence(
                "meet|VB|-1|root me|PRP|0|dative at|IN|0|prep seven|CD|2|pobj .|.|0|punct",
                None,
            )
            .anchor(3, 3)
            .gold_implicit(ImplicitClass::Time)
            .build()
            .unwrap(),
        ExampleBuilder::new("toy3/x")
            .sentence(
                "the|DT|1|det sandwiches|NNS|2|nsubj vanished|VBD|-1|root so|RB|5|advmod I|PRP|5|nsubj grabbed|VBD|2|conj one|CD|5|dobj .|.|2|punct",
                None,
            )
            .anchor(6, 6)
            .gold_reference(&[1])
            .build()
            .unwrap(),
        ExampleBuilder::new("toy4/x")
            .sentence(
                "two|CD|1|nummod candles|NNS|2|nsubj burned|VBD|-1|root and|CC|2|cc three|CD|2|conj melted|VBD|4|conj .|.|2|punct",
                None,
            )
            .anchor(4, 4)
            .gold_reference(&[1])
            .build()
            .unwrap(),
        ExampleBuilder::new("toy5/x")
            .sentence(
                "bring|VB|-1|root plates|NNS|0|dobj ;|,|0|punct take|VB|0|conj two|CD|3|dobj .|.|0|punct",
                None,
            )
            .anchor(4, 4)
            .gold_reference(&[1])
            .build()
            .unwrap(),
    ];

    // Random but seeded word vectors over the corpus vocabulary.
    let mut rng = Rng::new(40);
    let mut vocab = std::collections::BTreeSet::new();
    for ex in &corpus {
        for t in &ex.tokens {
            vocab.insert(t.lower.clone());
        }
    }
    let table = EmbeddingTable::new(
        vocab
            .into_iter()
            .map(|w| (w, (0..16).map(|_| rng.uniform(-0.5, 0.5)).collect()))
            .collect(),
    )
    .unwrap();

    let cfg = TrainConfig {
        resolver: ResolverConfig {
            char_dim: 8,
            char_hidden: 6,
            ctx_hidden: 12,
            mlp_hidden: 24,
            dropout: 0.0,
        },
        max_epochs: 60,
        patience: 60,
        seed: 13,
        ..TrainConfig::default()
    };

    println!("training on {} examples ...", corpus.len());
    let (params, report) = train_resolver(&corpus, &corpus, &table, &cfg).unwrap();
    for (i, (loss, acc)) in report
        .epoch_losses
        .iter()
        .zip(&report.dev_accuracy)
        .enumerate()
    {
        if (i + 1) % 10 == 0 || i == 0 {
            println!("  epoch {:>3}  mean loss {loss:.4}  train acc {acc:.2}", i + 1);
        }
    }

    println!("\nresolutions from the best checkpoint (epoch {}):", report.best_epoch);
    for ex in &corpus {
        let words: Vec<&str> = ex.tokens.iter().map(|t| t.surface.as_str()).collect();
        let anchor = words[ex.anchor.start..=ex.anchor.end].join(" ");
        let pred = params.resolve(ex, ex.anchor).unwrap();
        let shown = match &pred {
            Resolution::Implicit(c) => c.name().to_string(),
            Resolution::Reference { heads } => format!("`{}`", words[heads[0]]),
        };
        println!("  {:<8} `{anchor}` -> {shown}", ex.id);
    }
}
