//! Rule-based anchor identification: noun-less number phrases from the
//! constituency tree, dependency filters, textual patterns.
//!
//! ```bash
//! cargo run -p nfh --example identify_rules
//! ```

use nfh::corpus::ExampleBuilder;
use nfh::identify::{rules::identify_rule_decisions, PatternRegistry, TagScheme};

fn main() {
    let examples = vec![
        ExampleBuilder::new("demo/no-one")
            .sentence(
                "No|DT|1|det one|CD|2|nsubj cares|VBZ|-1|root ,|,|2|punct dear|NN|2|npadvmod .|.|2|punct",
                Some("(S (NP (DT No) (CD one)) (VP (VBZ cares)) (, ,) (NP (NN dear)) (. .))"),
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        ExampleBuilder::new("demo/thing-or-two")
            .sentence(
                "teach|VB|-1|root the|DT|2|det kid|NN|0|dative a|DT|4|det thing|NN|0|dobj or|CC|4|cc two|CD|4|conj .|.|0|punct",
                Some("(S (VP (VB teach) (NP (DT the) (NN kid)) (NP (DT a) (NN thing) (CC or) (CD two))) (. .))"),
            )
            .anchor(6, 6)
            .build()
            .unwrap(),
        ExampleBuilder::new("demo/cosmos")
            .sentence(
                "You|PRP|2|nsubj 've|VBP|2|aux had|VBN|-1|root one|CD|6|dep too|RB|5|advmod many|JJ|6|amod cosmos|NNS|2|dobj .|.|2|punct",
                Some("(S (NP (PRP You)) (VP (VBP 've) (VBN had) (NP (CD one)) (ADJP (RB too) (JJ many)) (NP (NNS cosmos))) (. .))"),
            )
            .anchor(3, 3)
            .build()
            .unwrap(),
        ExampleBuilder::new("demo/dollars")
            .sentence(
                "It|PRP|1|nsubj costs|VBZ|-1|root $|$|3|nmod 100|CD|1|dobj .|.|1|punct",
                Some("(S (NP (PRP It)) (VP (VBZ costs) (NP ($ $) (CD 100))) (. .))"),
            )
            .anchor(3, 3)
            .build()
            .unwrap(),
    ];

    let registry = PatternRegistry::default();
    let scheme = TagScheme::default();

    for ex in &examples {
        let words: Vec<&str> = ex.tokens.iter().map(|t| t.surface.as_str()).collect();
        println!("{}: {}", ex.id, words.join(" "));
        let decisions = identify_rule_decisions(ex, &registry, &scheme).unwrap();
        if decisions.is_empty() {
            println!("  no candidates");
        }
        for d in decisions {
            let surface = words[d.span.start..=d.span.end].join(" ");
            match d.filtered_by {
                None => println!("  + `{surface}` anchor via {}", d.fired_rule),
                Some(f) => println!("  - `{surface}` filtered by {f}"),
            }
        }
        println!();
    }
}
