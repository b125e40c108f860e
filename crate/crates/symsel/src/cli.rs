//! Command-line interface: `select`, `classify`, `experiment`, `synth`.
//!
//! Exit codes: 0 on success, 1 on argument misuse, 2 on any data,
//! format, or validation problem.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{classify_with_selection, ClassifierConfig, ClassifierKind};
use crate::dataset::{
    format_planted_record, load_dataset, parse_queries, serialize_dataset, synthesize_dataset,
    IntervalFeatureMatrix, SynthesisConfig,
};
use crate::error::{Error, Result};
use crate::experiment::{render_csv, render_table, run_experiment, ExperimentConfig};
use crate::selection::{build_knowledgebase, load_knowledgebase, save_knowledgebase};
use crate::{dataset, experiment};

#[derive(Parser)]
#[command(
    name = "symsel",
    version,
    about = "Class-specific feature selection and classification for interval-valued data"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a feature knowledgebase from a labeled dataset
    Select(SelectArgs),
    /// Classify queries against a saved knowledgebase
    Classify(ClassifyArgs),
    /// Sweep split fractions and K, comparing accuracy with and
    /// without feature selection
    Experiment(ExperimentArgs),
    /// Generate a synthetic dataset with planted informative features
    Synth(SynthArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifierArg {
    C1,
    C2,
}

impl From<ClassifierArg> for ClassifierKind {
    fn from(c: ClassifierArg) -> ClassifierKind {
        match c {
            ClassifierArg::C1 => ClassifierKind::C1,
            ClassifierArg::C2 => ClassifierKind::C2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

#[derive(Args)]
struct SelectArgs {
    /// Dataset CSV path, or `iris` for the bundled fixture
    #[arg(long)]
    dataset: String,
    /// Features to keep per class
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Knowledgebase JSON destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Knowledgebase JSON produced by `select`
    #[arg(long)]
    kb: PathBuf,
    /// Query CSV: lo/hi pairs per row, label column optional
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, value_enum, default_value = "c1")]
    classifier: ClassifierArg,
    #[arg(long, default_value_t = crate::classify::DEFAULT_BETA)]
    beta: f64,
    /// Prediction CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Dataset CSV path, or `iris` for the bundled fixture
    #[arg(long)]
    dataset: String,
    #[arg(long, value_enum, default_value = "c1")]
    classifier: ClassifierArg,
    #[arg(long, default_value_t = crate::classify::DEFAULT_BETA)]
    beta: f64,
    /// Sweep exactly this K
    #[arg(long, conflicts_with_all = ["k_min", "k_max"])]
    k: Option<usize>,
    /// Lowest K to sweep (default 2)
    #[arg(long)]
    k_min: Option<usize>,
    /// Highest K to sweep (default: one less than the feature count)
    #[arg(long)]
    k_max: Option<usize>,
    /// Train fractions, e.g. `0.3,0.5`
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    fractions: Option<Vec<f64>>,
    /// Repetitions per cell with distinct derived splits
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
    /// Report destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 3)]
    classes: usize,
    #[arg(long, default_value_t = 20)]
    per_class: usize,
    #[arg(long, default_value_t = 10)]
    features: usize,
    /// Planted informative features per class
    #[arg(long, default_value_t = 2)]
    informative: usize,
    /// Distance between consecutive class centers on planted features
    #[arg(long, default_value_t = 10.0)]
    separation: f64,
    /// Interval width for every generated feature
    #[arg(long, default_value_t = 0.5)]
    width: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Dataset CSV destination; the planted record lands next to it
    /// with a `.planted` suffix
    #[arg(long)]
    out: PathBuf,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Select(args) => run_select(args),
        Command::Classify(args) => run_classify(args),
        Command::Experiment(args) => run_experiment_cmd(args),
        Command::Synth(args) => run_synth(args),
    }
}

fn resolve_dataset(name: &str) -> Result<(IntervalFeatureMatrix, String)> {
    if name == "iris" {
        Ok((dataset::iris(), "iris".to_string()))
    } else {
        Ok((load_dataset(name)?, name.to_string()))
    }
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
            file.write_all(content.as_bytes())
                .map_err(|e| Error::io(path, e))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_select(args: SelectArgs) -> Result<()> {
    let (matrix, dataset_id) = resolve_dataset(&args.dataset)?;
    let built = build_knowledgebase(&matrix, args.k, args.seed, &dataset_id)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::io(path, e))?;
            save_knowledgebase(&built.kb, file)?;
            eprintln!(
                "knowledgebase: {} classes x {} features -> {}",
                built.kb.classes.len(),
                args.k,
                path.display()
            );
        }
        None => {
            let mut buf = Vec::new();
            save_knowledgebase(&built.kb, &mut buf)?;
            println!("{}", String::from_utf8_lossy(&buf));
        }
    }
    Ok(())
}

fn run_classify(args: ClassifyArgs) -> Result<()> {
    let kb_file = File::open(&args.kb).map_err(|e| Error::io(&args.kb, e))?;
    let kb = load_knowledgebase(kb_file)?;
    let query_file = File::open(&args.dataset).map_err(|e| Error::io(&args.dataset, e))?;
    let (queries, labels) = parse_queries(query_file)?;
    let cfg = ClassifierConfig {
        kind: args.classifier.into(),
        beta: args.beta,
    };
    let mut out = String::from("query,predicted,score\n");
    let mut correct = 0usize;
    for (i, query) in queries.iter().enumerate() {
        let pred = classify_with_selection(query, &kb, &cfg)?;
        let label = &kb.classes[pred.class_index].label;
        out.push_str(&format!(
            "{},{},{:.6}\n",
            i + 1,
            label,
            pred.scores[pred.class_index]
        ));
        if let Some(truth) = &labels {
            if &truth[i] == label {
                correct += 1;
            }
        }
    }
    if labels.is_some() {
        out.push_str(&format!(
            "# accuracy: {:.4} ({}/{})\n",
            correct as f64 / queries.len() as f64,
            correct,
            queries.len()
        ));
    }
    write_output(args.out.as_deref(), &out)
}

fn run_experiment_cmd(args: ExperimentArgs) -> Result<()> {
    let (matrix, dataset_id) = resolve_dataset(&args.dataset)?;
    let classifier = ClassifierConfig {
        kind: args.classifier.into(),
        beta: args.beta,
    };
    let k_values: Vec<usize> = match (args.k, args.k_min, args.k_max) {
        (Some(k), _, _) => vec![k],
        (None, min, max) => {
            let lo = min.unwrap_or(2);
            let hi = max.unwrap_or_else(|| matrix.n_features().saturating_sub(1));
            if lo > hi {
                return Err(Error::config(format!("empty K range: {lo}..={hi}")));
            }
            (lo..=hi).collect()
        }
    };
    let cfg = ExperimentConfig {
        classifier,
        fractions: args
            .fractions
            .unwrap_or_else(|| experiment::DEFAULT_FRACTIONS.to_vec()),
        k_values,
        repetitions: args.reps,
        seed: args.seed,
    };
    let report = run_experiment(&matrix, &dataset_id, &cfg)?;
    let rendered = match args.format {
        FormatArg::Table => render_table(&report),
        FormatArg::Csv => render_csv(&report)?,
    };
    write_output(args.out.as_deref(), &rendered)
}

fn run_synth(args: SynthArgs) -> Result<()> {
    let cfg = SynthesisConfig {
        n_classes: args.classes,
        n_per_class: args.per_class,
        n_features: args.features,
        informative_per_class: args.informative,
        separation: args.separation,
        noise_width: args.width,
        seed: args.seed,
    };
    let out = synthesize_dataset(&cfg)?;
    let file = File::create(&args.out).map_err(|e| Error::io(&args.out, e))?;
    serialize_dataset(&out.matrix, file)?;
    let planted_path = planted_path(&args.out);
    let record = format_planted_record(&out.matrix, &out.planted);
    let mut file = File::create(&planted_path).map_err(|e| Error::io(&planted_path, e))?;
    file.write_all(record.as_bytes())
        .map_err(|e| Error::io(&planted_path, e))?;
    eprintln!(
        "wrote {} samples x {} features to {}; planted record at {}",
        out.matrix.n_samples(),
        out.matrix.n_features(),
        args.out.display(),
        planted_path.display()
    );
    Ok(())
}

fn planted_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".planted");
    out.with_file_name(name)
}
