//! The four deterministic resolution patterns on their canonical shapes.
//!
//! ```bash
//! cargo run -p nfh --example resolve_patterns
//! ```

use nfh::corpus::{ExampleBuilder, Resolution};
use nfh::identify::TagScheme;
use nfh::resolve::match_deterministic;

fn main() {
    let examples = vec![
        ExampleBuilder::new("pat/no-one")
            .sentence(
                "No|DT|1|det one|CD|2|nsubj cares|VBZ|-1|root .|.|2|punct",
                None,
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        ExampleBuilder::new("pat/you-two")
            .sentence(
                "Are|VBP|-1|root you|PRP|0|nsubj two|CD|1|appos done|JJ|0|acomp ?|.|0|punct",
                None,
            )
            .anchor(2, 2)
            .build()
            .unwrap(),
        ExampleBuilder::new("pat/partitive")
            .sentence(
                "that|DT|1|nsubj 's|VBZ|-1|root one|CD|1|attr of|IN|2|prep my|PRP$|5|poss dreams|NNS|3|pobj",
                None,
            )
            .anchor(2, 2)
            .build()
            .unwrap(),
        ExampleBuilder::new("pat/copular")
            .sentence(
                "Theresa|NNP|1|nsubj is|VBZ|-1|root the|DT|3|det one|CD|1|attr .|.|1|punct",
                None,
            )
            .anchor(3, 3)
            .build()
            .unwrap(),
        ExampleBuilder::new("pat/none")
            .sentence(
                "teach|VB|-1|root the|DT|2|det kid|NN|0|dative a|DT|4|det thing|NN|0|dobj or|CC|4|cc two|CD|4|conj",
                None,
            )
            .anchor(6, 6)
            .build()
            .unwrap(),
    ];

    let scheme = TagScheme::default();
    for ex in &examples {
        let words: Vec<&str> = ex.tokens.iter().map(|t| t.surface.as_str()).collect();
        let anchor = words[ex.anchor.start..=ex.anchor.end].join(" ");
        print!("{:<14} `{anchor}` in \"{}\"  ->  ", ex.id, words.join(" "));
        match match_deterministic(ex, ex.anchor, &scheme) {
            None => println!("no pattern (neural model decides)"),
            Some(m) => match &m.resolution {
                Resolution::Implicit(class) => {
                    println!("{} => {class}", m.pattern.name())
                }
                Resolution::Reference { heads } => {
                    println!("{} => `{}`", m.pattern.name(), words[heads[0]])
                }
            },
        }
    }
}
