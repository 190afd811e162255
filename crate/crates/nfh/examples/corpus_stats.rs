//! Corpus statistics: anchor frequencies, span lengths, class distribution
//! and where reference heads sit relative to their anchors.
//!
//! ```bash
//! cargo run -p nfh --example corpus_stats
//! ```

use nfh::corpus::{Example, ExampleBuilder, ImplicitClass};
use nfh::eval::corpus_stats;

fn main() {
    let mut corpus: Vec<Example> = Vec::new();
    // Skew toward the anchor "one", as NFH corpora are.
    for i in 0..6 {
        corpus.push(
            ExampleBuilder::new(format!("show{}/sc/{i}", i % 3))
                .sentence(
                    "No|DT|1|det one|CD|2|nsubj cares|VBZ|-1|root .|.|2|punct",
                    None,
                )
                .anchor(1, 1)
                .gold_implicit(ImplicitClass::People)
                .build()
                .unwrap(),
        );
    }
    corpus.push(
        ExampleBuilder::new("show0/sc/a")
            .sentence(
                "two|CD|1|nummod months|NNS|2|nsubj left|VBD|-1|root ,|,|2|punct three|CD|2|conj maybe|RB|2|advmod",
                None,
            )
            .anchor(4, 4)
            .gold_reference(&[1])
            .build()
            .unwrap(),
    );
    corpus.push(
        ExampleBuilder::new("show1/sc/b")
            .sentence("I|PRP|1|nsubj am|VBP|-1|root 42|CD|1|attr .|.|1|punct", None)
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::Age)
            .build()
            .unwrap(),
    );
    corpus.push(
        ExampleBuilder::new("show2/sc/c")
            .sentence(
                "He|PRP|1|nsubj ate|VBD|-1|root thirty|CD|3|compound six|CD|1|dobj .|.|1|punct",
                None,
            )
            .anchor(2, 3)
            .gold_implicit(ImplicitClass::Other)
            .build()
            .unwrap(),
    );

    let report = corpus_stats(&corpus);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
