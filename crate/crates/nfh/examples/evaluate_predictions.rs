//! The three accuracy metrics and the confusion matrix on a hand-built
//! prediction set.
//!
//! ```bash
//! cargo run -p nfh --example evaluate_predictions
//! ```

use nfh::corpus::{Example, ExampleBuilder, ImplicitClass, Resolution};
use nfh::eval::{confusion_csv, evaluate, GOLD_LABELS, PRED_LABELS};

fn age_example(id: &str) -> Example {
    ExampleBuilder::new(id)
        .sentence("I|PRP|1|nsubj am|VBP|-1|root 42|CD|1|attr .|.|1|punct", None)
        .anchor(2, 2)
        .gold_implicit(ImplicitClass::Age)
        .build()
        .unwrap()
}

fn month_example(id: &str) -> Example {
    ExampleBuilder::new(id)
        .sentence(
            "two|CD|1|nummod months|NNS|2|nsubj left|VBD|-1|root ,|,|2|punct three|CD|2|conj maybe|RB|2|advmod",
            None,
        )
        .anchor(4, 4)
        .gold_reference(&[1])
        .build()
        .unwrap()
}

fn main() {
    let examples = vec![
        age_example("e/0"),
        age_example("e/1"),
        month_example("e/2"),
        month_example("e/3"),
        month_example("e/4"),
        age_example("e/5"),
    ];
    let predictions = vec![
        Resolution::Implicit(ImplicitClass::Age),     // exact
        Resolution::Implicit(ImplicitClass::Year),    // wrong class
        Resolution::reference(1),                     // exact head
        Resolution::reference(5),                     // right kind, wrong head
        Resolution::Implicit(ImplicitClass::People),  // wrong kind
        Resolution::Implicit(ImplicitClass::Age),     // exact
    ];

    let metrics = evaluate(&examples, &predictions).unwrap();
    println!("examples:             {}", metrics.n);
    println!("head accuracy:        {:.3}", metrics.head_accuracy);
    println!("categorical accuracy: {:.3}", metrics.categorical_accuracy);
    println!("binary accuracy:      {:.3}", metrics.binary_accuracy);

    println!("\nconfusion (rows gold {GOLD_LABELS:?},");
    println!("           cols pred {PRED_LABELS:?}):\n");
    print!("{}", confusion_csv(&metrics));

    println!("\nper-class precision/recall:");
    for report in metrics.per_class() {
        if report.gold_count > 0 {
            println!(
                "  {:<10} P {:.2}  R {:.2}  (n={})",
                report.label, report.precision, report.recall, report.gold_count
            );
        }
    }
}
