//! Corpus ingestion: JSONL records, source-disjoint splitting and the
//! text-format word-vector loader.
//!
//! ```bash
//! cargo run -p nfh --example corpus_io
//! ```

use std::io::Write;

use nfh::corpus::{jsonl, load_embeddings, partition_by_source, ExampleBuilder};

fn main() {
    // One JSONL record, as produced by an external preprocessing step.
    let line = r#"{"id":"showA/ep1/sc1/x0","tokens":[{"t":"No","p":"DT","h":1,"d":"det","l":"no"},{"t":"one","p":"CD","h":2,"d":"nsubj","l":"one"},{"t":"cares","p":"VBZ","h":-1,"d":"root","l":"care"},{"t":".","p":".","h":2,"d":"punct","l":"."}],"sents":[[0,4]],"turns":[[0,0,4]],"trees":["(S (NP (DT No) (CD one)) (VP (VBZ cares)) (. .))"],"anchor":[1,1],"gold":{"kind":"implicit","class":"PEOPLE"}}"#;
    let example = jsonl::parse_example_record(line).unwrap();
    println!("parsed `{}`: anchor `{}`", example.id, example.anchor_text());
    println!("round-trips: {}", jsonl::parse_example_record(&jsonl::serialize_example(&example)).unwrap() == example);

    // Splitting keeps every source work in one split.
    let mut corpus = Vec::new();
    for (source, count) in [("showA", 8), ("showB", 5), ("showC", 4), ("showD", 2), ("showE", 1)] {
        for i in 0..count {
            corpus.push(
                ExampleBuilder::new(format!("{source}/ep/{i}"))
                    .sentence("take|VB|-1|root two|CD|0|dobj", None)
                    .anchor(1, 1)
                    .build()
                    .unwrap(),
            );
        }
    }
    let splits = partition_by_source(&corpus, &[0.6, 0.2, 0.2], 13).unwrap();
    for (name, split) in ["train", "dev", "test"].iter().zip(&splits) {
        let mut sources: Vec<&str> = split.iter().map(|e| e.source_key()).collect();
        sources.dedup();
        println!("{name}: {} examples from {:?}", split.len(), sources);
    }

    // Word vectors; unknown words fall back to the vocabulary mean.
    let dir = std::env::temp_dir().join("nfh-example-embeddings.txt");
    let mut f = std::fs::File::create(&dir).unwrap();
    writeln!(f, "one 1.0 0.0 0.0").unwrap();
    writeln!(f, "two 0.0 1.0 0.0").unwrap();
    drop(f);
    let table = load_embeddings(&dir).unwrap();
    println!(
        "embeddings: dim {}, lookup(one) = {:?}, lookup(zebra) = {:?}",
        table.dimension(),
        table.lookup("one"),
        table.lookup("zebra"),
    );
    let _ = std::fs::remove_file(&dir);
}
