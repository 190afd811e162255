//! Batch command-line front end.
//!
//! Six subcommands: `identify`, `train-identifier`, `resolve`,
//! `train-resolver`, `eval`, `stats`. Inputs and outputs are local files
//! (JSONL in, JSONL/JSON out); progress goes to stderr; every run that
//! writes an output file also writes a `<out>.config.json` echo of its
//! resolved configuration. Exit codes: 0 success, 1 bad input, 2 internal
//! failure. All randomness flows from `--seed` (default 13), so re-running
//! a command with the same configuration reproduces its outputs byte for
//! byte. `NFH_THREADS` caps per-example fan-out.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::corpus::{jsonl, load_embeddings, Example, Resolution};
use crate::eval;
use crate::identify::{
    classify_span, extract_identification_features, features::DEFAULT_HASH_BITS,
    identify_rule_based, linear::TrainOptions, train_identifier, Ablation, LinearModel,
    PatternRegistry, TagScheme,
};
use crate::parallel;
use crate::resolve::neural::{checkpoint, train_resolver, ResolverConfig, TrainConfig};
use crate::resolve::match_deterministic;
use crate::{NfhError, Result};

#[derive(Parser)]
#[command(
    name = "nfh",
    about = "Identify and resolve numeric fused heads in parsed text",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mark each input line's anchor as FH or not.
    Identify(IdentifyArgs),
    /// Train the linear FH-or-not classifier on rule-based labels.
    TrainIdentifier(TrainIdentifierArgs),
    /// Resolve anchors to heads with patterns and the neural model.
    Resolve(ResolveArgs),
    /// Train the neural resolver.
    TrainResolver(TrainResolverArgs),
    /// Score predictions against gold labels.
    Eval(EvalArgs),
    /// Corpus statistics.
    Stats(StatsArgs),
}

#[derive(Args, Serialize)]
struct IdentifyArgs {
    /// Use the rule cascade (requires trees in the input).
    #[arg(long, conflicts_with = "model")]
    rules: bool,
    /// Use a trained .nfhl model instead of the rules.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Pattern registry JSON (defaults to the built-in P1..P4).
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Feature ablation for --model: full, -dep, -pos, -dep-pos.
    #[arg(long, default_value = "full")]
    ablation: String,
    #[arg(long, default_value_t = 13)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct TrainIdentifierArgs {
    /// Corpus with trees; rule-based positives become training labels.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    registry: Option<PathBuf>,
    #[arg(long, default_value = "full")]
    ablation: String,
    #[arg(long, default_value_t = 10)]
    epochs: usize,
    #[arg(long, default_value_t = DEFAULT_HASH_BITS)]
    hash_bits: u32,
    #[arg(long, default_value_t = 13)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct ResolveArgs {
    /// Neural checkpoint (.nfhr).
    #[arg(long)]
    model: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Try the deterministic patterns before the model (the default).
    #[arg(long, conflicts_with = "no_patterns")]
    deterministic_first: bool,
    /// Skip the deterministic patterns and use the model everywhere.
    #[arg(long)]
    no_patterns: bool,
    /// Route pattern matches to a separate file instead of --out.
    #[arg(long)]
    patterns_out: Option<PathBuf>,
    #[arg(long, default_value_t = 13)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct TrainResolverArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    dev: PathBuf,
    /// Word vectors, text format.
    #[arg(long)]
    embeddings: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_epochs: usize,
    #[arg(long, default_value_t = 10)]
    patience: usize,
    #[arg(long, default_value_t = 0.001)]
    lr: f64,
    #[arg(long, default_value_t = 30)]
    char_dim: usize,
    #[arg(long, default_value_t = 10)]
    char_hidden: usize,
    #[arg(long, default_value_t = 50)]
    ctx_hidden: usize,
    #[arg(long, default_value_t = 150)]
    mlp_hidden: usize,
    #[arg(long, default_value_t = 0.2)]
    dropout: f64,
}

#[derive(Args, Serialize)]
struct EvalArgs {
    /// Predictions from `nfh resolve`.
    #[arg(long)]
    pred: PathBuf,
    /// Gold-labeled corpus JSONL.
    #[arg(long)]
    gold: PathBuf,
    /// Metrics JSON destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also export the confusion matrix as CSV.
    #[arg(long)]
    confusion_csv: Option<PathBuf>,
    #[arg(long, default_value_t = 13)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct StatsArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Stats JSON destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 13)]
    seed: u64,
}

/// Entry point used by the `nfh` binary; returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    let result = match cli.command {
        Command::Identify(args) => cmd_identify(args),
        Command::TrainIdentifier(args) => cmd_train_identifier(args),
        Command::Resolve(args) => cmd_resolve(args),
        Command::TrainResolver(args) => cmd_train_resolver(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Stats(args) => cmd_stats(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Write the resolved configuration next to an output file.
fn write_config_echo<A: Serialize>(command: &str, args: &A, out: &Path) -> Result<()> {
    #[derive(Serialize)]
    struct Echo<'a, A> {
        command: &'a str,
        #[serde(flatten)]
        args: &'a A,
    }
    let echo_path = config_echo_path(out);
    let text = serde_json::to_string_pretty(&Echo { command, args })
        .expect("config echo serialization");
    std::fs::write(&echo_path, text + "\n")
        .map_err(|e| NfhError::io(echo_path.display().to_string(), e))
}

fn config_echo_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".config.json");
    out.with_file_name(name)
}

fn load_registry(path: &Option<PathBuf>) -> Result<PatternRegistry> {
    match path {
        Some(p) => PatternRegistry::load(p),
        None => Ok(PatternRegistry::default()),
    }
}

fn parse_ablation(name: &str) -> Result<Ablation> {
    Ablation::from_name(name).ok_or_else(|| {
        NfhError::validation(
            "ablation",
            format!("unknown ablation `{name}` (expected full, -dep, -pos, -dep-pos)"),
        )
    })
}

fn write_lines(path: &Path, lines: &[String]) -> Result<()> {
    let mut file =
        std::fs::File::create(path).map_err(|e| NfhError::io(path.display().to_string(), e))?;
    for line in lines {
        writeln!(file, "{line}").map_err(|e| NfhError::io(path.display().to_string(), e))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct AnchorRecord<'a> {
    id: &'a str,
    anchor: (usize, usize),
}

fn cmd_identify(args: IdentifyArgs) -> Result<()> {
    if !args.rules && args.model.is_none() {
        return Err(NfhError::validation(
            "identify",
            "choose --rules or --model <path>",
        ));
    }
    let examples = jsonl::load_corpus(&args.input)?;
    let scheme = TagScheme::default();
    let registry = load_registry(&args.registry)?;

    let positives: Vec<bool> = if args.rules {
        let flags: Vec<Result<bool>> = parallel::ordered_map(&examples, |ex| {
            identify_rule_based(ex, &registry, &scheme).map(|spans| spans.contains(&ex.anchor))
        });
        flags.into_iter().collect::<Result<Vec<bool>>>()?
    } else {
        let model = LinearModel::load(args.model.as_ref().unwrap())?;
        let ablation = parse_ablation(&args.ablation)?;
        parallel::ordered_map(&examples, |ex| {
            let fv = extract_identification_features(
                ex,
                ex.anchor,
                ablation,
                model.feature_space_bits,
            );
            classify_span(&model, &fv).0
        })
    };

    let lines: Vec<String> = examples
        .iter()
        .zip(&positives)
        .filter(|(_, &pos)| pos)
        .map(|(ex, _)| {
            serde_json::to_string(&AnchorRecord {
                id: &ex.id,
                anchor: (ex.anchor.start, ex.anchor.end),
            })
            .expect("anchor record")
        })
        .collect();
    write_lines(&args.out, &lines)?;
    write_config_echo("identify", &args, &args.out)?;
    eprintln!(
        "identify: {} positive of {} anchors -> {}",
        lines.len(),
        examples.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_train_identifier(args: TrainIdentifierArgs) -> Result<()> {
    let examples = jsonl::load_corpus(&args.input)?;
    let scheme = TagScheme::default();
    let registry = load_registry(&args.registry)?;
    let ablation = parse_ablation(&args.ablation)?;

    // Noisy supervision: the rule cascade labels each line's anchor.
    let labels: Vec<Result<bool>> = parallel::ordered_map(&examples, |ex| {
        identify_rule_based(ex, &registry, &scheme).map(|spans| spans.contains(&ex.anchor))
    });
    let labels = labels.into_iter().collect::<Result<Vec<bool>>>()?;

    let dataset: Vec<_> = examples
        .iter()
        .zip(&labels)
        .map(|(ex, &y)| {
            (
                extract_identification_features(ex, ex.anchor, ablation, args.hash_bits),
                y,
            )
        })
        .collect();

    let options = TrainOptions {
        epochs: args.epochs,
        seed: args.seed,
        hash_bits: args.hash_bits,
        ..TrainOptions::default()
    };
    let model = train_identifier(&dataset, &options)?;
    model.save(&args.out)?;
    write_config_echo("train-identifier", &args, &args.out)?;
    let pos = labels.iter().filter(|&&y| y).count();
    eprintln!(
        "train-identifier: {} examples ({pos} rule-positive) -> {}",
        examples.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_resolve(args: ResolveArgs) -> Result<()> {
    let examples = jsonl::load_corpus(&args.input)?;
    let (params, _, _) = checkpoint::load_checkpoint(&args.model)?;
    let scheme = TagScheme::default();

    struct Outcome {
        resolution: Result<Resolution>,
        from_pattern: bool,
    }

    let outcomes: Vec<Outcome> = parallel::ordered_map(&examples, |ex| {
        if !args.no_patterns {
            if let Some(m) = match_deterministic(ex, ex.anchor, &scheme) {
                return Outcome { resolution: Ok(m.resolution), from_pattern: true };
            }
        }
        Outcome { resolution: params.resolve(ex, ex.anchor), from_pattern: false }
    });

    let mut main_lines = Vec::new();
    let mut pattern_lines = Vec::new();
    let mut pattern_count = 0usize;
    for (ex, outcome) in examples.iter().zip(outcomes) {
        let resolution = outcome.resolution?;
        let record = jsonl::PredictionRecord {
            id: ex.id.clone(),
            anchor: (ex.anchor.start, ex.anchor.end),
            resolution: jsonl::RawResolution::from_resolution(&resolution),
            source: if outcome.from_pattern { "pattern" } else { "model" }.to_string(),
        };
        let line = serde_json::to_string(&record).expect("prediction record");
        if outcome.from_pattern {
            pattern_count += 1;
            match &args.patterns_out {
                Some(_) => pattern_lines.push(line),
                None => main_lines.push(line),
            }
        } else {
            main_lines.push(line);
        }
    }

    write_lines(&args.out, &main_lines)?;
    if let Some(p) = &args.patterns_out {
        write_lines(p, &pattern_lines)?;
    }
    write_config_echo("resolve", &args, &args.out)?;
    eprintln!(
        "resolve: {} anchors ({pattern_count} by pattern) -> {}",
        examples.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_train_resolver(args: TrainResolverArgs) -> Result<()> {
    let train = jsonl::load_corpus(&args.train)?;
    let dev = jsonl::load_corpus(&args.dev)?;
    let table = load_embeddings(&args.embeddings)?;

    let cfg = TrainConfig {
        resolver: ResolverConfig {
            char_dim: args.char_dim,
            char_hidden: args.char_hidden,
            ctx_hidden: args.ctx_hidden,
            mlp_hidden: args.mlp_hidden,
            dropout: args.dropout,
        },
        lr: args.lr,
        max_epochs: args.max_epochs,
        patience: args.patience,
        seed: args.seed,
        ..TrainConfig::default()
    };
    eprintln!(
        "train-resolver: {} train / {} dev examples, {} words of dim {}",
        train.len(),
        dev.len(),
        table.len(),
        table.dimension()
    );
    let (params, report) = train_resolver(&train, &dev, &table, &cfg)?;
    for (epoch, acc) in report.dev_accuracy.iter().enumerate() {
        eprintln!("  epoch {:>3}: dev head-accuracy {:.4}", epoch + 1, acc);
    }
    eprintln!(
        "train-resolver: best epoch {} (dev {:.4}) -> {}",
        report.best_epoch,
        report.best_dev_accuracy,
        args.out.display()
    );
    let echo = serde_json::to_string(&cfg).expect("train config echo");
    checkpoint::save_checkpoint(&args.out, &params, args.seed, &echo)?;
    write_config_echo("train-resolver", &args, &args.out)?;
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let gold = jsonl::load_corpus(&args.gold)?;
    let preds = jsonl::load_predictions(&args.pred)?;

    // Align by (id, anchor); the prediction file may be a subset (pattern
    // matches are often kept out of model evaluation).
    let mut remaining: Vec<Option<&Example>> = gold.iter().map(Some).collect();
    let mut pairs: Vec<(Example, Resolution)> = Vec::with_capacity(preds.len());
    for pred in &preds {
        let slot = remaining
            .iter()
            .position(|g| {
                g.map(|ex| ex.id == pred.id && (ex.anchor.start, ex.anchor.end) == pred.anchor)
                    .unwrap_or(false)
            })
            .ok_or_else(|| {
                NfhError::Data(format!(
                    "prediction for `{}` anchor {:?} has no matching gold line",
                    pred.id, pred.anchor
                ))
            })?;
        let ex = remaining[slot].take().unwrap();
        pairs.push((ex.clone(), pred.resolution.to_resolution()?));
    }

    let examples: Vec<Example> = pairs.iter().map(|(e, _)| e.clone()).collect();
    let resolutions: Vec<Resolution> = pairs.iter().map(|(_, r)| r.clone()).collect();
    let metrics = eval::evaluate(&examples, &resolutions)?;

    #[derive(Serialize)]
    struct MetricsOut {
        n: usize,
        head_accuracy: f64,
        categorical_accuracy: f64,
        binary_accuracy: f64,
        confusion_gold_labels: [&'static str; 7],
        confusion_pred_labels: [&'static str; 8],
        confusion: [[usize; 8]; 7],
        per_class: Vec<eval::ClassReport>,
    }
    let out = MetricsOut {
        n: metrics.n,
        head_accuracy: metrics.head_accuracy,
        categorical_accuracy: metrics.categorical_accuracy,
        binary_accuracy: metrics.binary_accuracy,
        confusion_gold_labels: eval::GOLD_LABELS,
        confusion_pred_labels: eval::PRED_LABELS,
        confusion: metrics.confusion,
        per_class: metrics.per_class(),
    };
    let text = serde_json::to_string_pretty(&out).expect("metrics json") + "\n";
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| NfhError::io(path.display().to_string(), e))?;
            write_config_echo("eval", &args, path)?;
        }
        None => print!("{text}"),
    }
    if let Some(csv_path) = &args.confusion_csv {
        std::fs::write(csv_path, eval::confusion_csv(&metrics))
            .map_err(|e| NfhError::io(csv_path.display().to_string(), e))?;
    }
    eprintln!(
        "eval: n={} head={:.4} categorical={:.4} binary={:.4}",
        metrics.n, metrics.head_accuracy, metrics.categorical_accuracy, metrics.binary_accuracy
    );
    Ok(())
}

fn cmd_stats(args: StatsArgs) -> Result<()> {
    let examples = jsonl::load_corpus(&args.input)?;
    let report = eval::corpus_stats(&examples);
    let text = serde_json::to_string_pretty(&report).expect("stats json") + "\n";
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| NfhError::io(path.display().to_string(), e))?;
            write_config_echo("stats", &args, path)?;
        }
        None => print!("{text}"),
    }
    eprintln!("stats: {} examples", report.n);
    Ok(())
}
