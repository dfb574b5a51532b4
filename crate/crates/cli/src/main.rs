//! `codetect`: run the detection pipeline stage by stage or end to end.
//!
//! Every config key can be overridden with `--dotted.key=value`, for
//! example `--qa.low_percentile=10` or `--model.trees=200`.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codetect_core::corpus::{self, CodeSample};
use codetect_core::explain::{ImportanceMethod, ImportanceMetric};
use codetect_core::models::{self, TrainedModel};
use codetect_core::pipeline::{
    corpus_digest, predict_single, ErrorKind, SinglePrediction, Pipeline, PipelineError, RunConfig, Stage, CORPUS, MODEL,
};
use codetect_core::Task;

#[derive(Parser, Debug)]
#[command(name = "codetect", version, about = "Detect and attribute LLM-generated code")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Run configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the run seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the parallel stages.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Overrides the output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// More log output; repeat for debug.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Read the corpus files into one JSONL.
    Ingest,
    /// Strip comments, filter, deduplicate and split.
    Qa,
    /// Extract stylometric features for the three splits.
    Featurize,
    /// Fit the configured model on the train split.
    Train,
    /// Score the test split, or an external predictions file.
    Evaluate {
        /// Predictions JSONL with id, gold, pred and scores.
        #[arg(long)]
        predictions: Option<PathBuf>,
    },
    /// Classify code with a trained model.
    Predict(PredictArgs),
    /// Authorship attribution: with inputs, classify them with an
    /// attribution model; without, run the pipeline with the attribution task.
    Attribute(PredictArgs),
    /// Rank features by importance.
    Explain {
        #[arg(long, value_enum, default_value = "gain")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "macro-f1")]
        metric: MetricArg,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
    /// Score the zero-shot curvature baseline.
    Zeroshot,
    /// Every stage in order.
    Run,
}

#[derive(Args, Debug)]
struct PredictArgs {
    /// Model file; defaults to model.json in the output directory.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Inline code.
    #[arg(long)]
    code: Vec<String>,
    /// Code file, or `-` for standard input.
    #[arg(long)]
    file: Vec<PathBuf>,
    /// Language tag; guessed from the file extension when omitted.
    #[arg(long)]
    language: Option<String>,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
enum MethodArg {
    Gain,
    Permutation,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
enum MetricArg {
    Accuracy,
    MacroF1,
}

/// Splits `--a.b=v` overrides off the argument list.
fn split_overrides(args: Vec<String>) -> (Vec<String>, Vec<(String, String)>) {
    let mut rest = Vec::new();
    let mut overrides = Vec::new();
    for arg in args {
        let parsed = arg
            .strip_prefix("--")
            .and_then(|body| body.split_once('='))
            .filter(|(key, _)| key.contains('.'));
        match parsed {
            Some((key, value)) => overrides.push((key.to_string(), value.to_string())),
            None => rest.push(arg),
        }
    }
    (rest, overrides)
}

fn load_config(global: &Global, overrides: &[(String, String)]) -> Result<RunConfig, PipelineError> {
    let mut cfg = match &global.config {
        Some(path) => RunConfig::load(path, overrides)?,
        None => RunConfig::from_toml("", overrides, None)?,
    };
    if let Some(seed) = global.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &global.out {
        cfg.out_dir = out.clone();
    }
    Ok(cfg)
}

/// Writes to standard output; a closed pipe ends the process quietly.
macro_rules! say {
    ($($arg:tt)*) => {{
        let mut out = std::io::stdout().lock();
        if let Err(e) = write!(out, $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    }};
}

macro_rules! sayln {
    ($($arg:tt)*) => {{
        say!($($arg)*);
        say!("\n");
    }};
}

#[derive(serde::Serialize)]
struct Labeled<'a> {
    input: &'a str,
    #[serde(flatten)]
    prediction: &'a SinglePrediction,
}

fn io(stage: Stage, what: &Path, e: impl std::fmt::Display) -> PipelineError {
    PipelineError::new(stage, ErrorKind::Io, format!("{}: {e}", what.display()))
}

fn qa_corpus(p: &Pipeline) -> Result<Vec<CodeSample>, PipelineError> {
    p.load_qa_corpus()
}

fn guess_language(path: &Path) -> Option<&'static str> {
    match path.extension()?.to_str()? {
        "py" => Some("python"),
        "java" => Some("java"),
        "cpp" | "cc" | "cxx" | "hpp" | "h" => Some("cpp"),
        _ => None,
    }
}

fn load_model(p: &Pipeline, path: Option<&PathBuf>) -> Result<TrainedModel<f64>, PipelineError> {
    match path {
        Some(path) => models::load(path).map_err(|e| PipelineError::new(Stage::Predict, e_kind(&e), e.to_string())),
        None => p.load_model(),
    }
}

fn e_kind(e: &models::ModelError) -> ErrorKind {
    use codetect_core::pipeline::Classify;
    e.kind()
}

fn predict(p: &Pipeline, args: &PredictArgs, require_attribution: bool) -> Result<(), PipelineError> {
    let model = load_model(p, args.model.as_ref())?;
    if require_attribution && model.label_space.task != Task::Attribution {
        return Err(PipelineError::new(
            Stage::Predict,
            ErrorKind::Validation,
            format!("model was trained for the {} task, not attribution", model.label_space.task),
        ));
    }
    let mut inputs: Vec<(String, String, Option<&'static str>)> = args
        .code
        .iter()
        .enumerate()
        .map(|(i, c)| (format!("code[{i}]"), c.clone(), None))
        .collect();
    for path in &args.file {
        let code = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| io(Stage::Predict, path, e))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| io(Stage::Predict, path, e))?
        };
        inputs.push((path.display().to_string(), code, guess_language(path)));
    }
    if inputs.is_empty() {
        return Err(PipelineError::new(Stage::Predict, ErrorKind::Validation, "no input; pass --code or --file"));
    }
    for (name, code, guessed) in inputs {
        let language = args.language.as_deref().or(guessed).ok_or_else(|| {
            PipelineError::new(Stage::Predict, ErrorKind::Validation, format!("{name}: --language is required"))
        })?;
        let prediction = predict_single(&model, &code, language, &p.config.features)?;
        let line = serde_json::to_string(&Labeled {
            input: &name,
            prediction: &prediction,
        })
        .expect("prediction serializes");
        sayln!("{line}");
    }
    Ok(())
}

fn run(p: &Pipeline) -> Result<(), PipelineError> {
    let summary = p.run()?;
    let title = format!("{} ({})", summary.report.task, summary.report.protocol.protocol);
    say!("{}", summary.report.render(&title));
    if let Some(d) = &summary.degradation {
        sayln!(
            "degradation: {} hybrids, spearman {}, non-increasing {} (within sampling band {})",
            d.n_hybrids,
            d.curve.spearman.map_or("n/a".into(), |r| format!("{r:.3}")),
            d.non_increasing,
            d.non_increasing_trend,
        );
    }
    if let Some(z) = &summary.zeroshot {
        sayln!(
            "zeroshot: accuracy {:.4} vs majority {:.4}",
            z.report.overall.accuracy, z.majority_accuracy
        );
    }
    sayln!("artifacts in {}", p.config.out_dir.display());
    Ok(())
}

fn dispatch(command: &Command, p: &Pipeline) -> Result<(), PipelineError> {
    match command {
        Command::Ingest => {
            let samples = p.ingest()?;
            sayln!("{} samples -> {}", samples.len(), p.out(CORPUS).display());
        }
        Command::Qa => {
            let path = p.out(CORPUS);
            let samples = if path.is_file() {
                corpus::ingest(&path).map_err(|e| io(Stage::Qa, &path, e))?
            } else {
                p.ingest()?
            };
            let kept = p.qa(samples)?;
            sayln!("{} samples after qa", kept.len());
        }
        Command::Featurize => {
            let f = p.featurize(&qa_corpus(p)?)?;
            sayln!(
                "{} features; {} / {} / {} rows",
                f.schema.feature_names.len(),
                f.train.rows.len(),
                f.val.rows.len(),
                f.test.rows.len()
            );
        }
        Command::Train => {
            let features = p.load_features()?;
            let digest = p.load_qa_corpus().ok().map(|s| corpus_digest(&s));
            let model = p.train(&features, digest)?;
            sayln!("{} model -> {}", model.kind().as_str(), p.out(MODEL).display());
        }
        Command::Evaluate { predictions } => {
            let samples = qa_corpus(p)?;
            let report = match predictions {
                Some(path) => p.evaluate_predictions(path, &samples)?,
                None => {
                    let model = p.load_model()?;
                    let features = p.load_features()?;
                    let meta = p.protocol_meta(
                        "in-domain",
                        None,
                        Some(corpus_digest(&samples)),
                        Some(models::model_digest(&model)),
                    );
                    p.evaluate(&model, &features.test, &samples, meta)?
                }
            };
            say!("{}", report.render(&report.task.to_string()));
        }
        Command::Predict(args) => predict(p, args, false)?,
        Command::Attribute(args) if !args.code.is_empty() || !args.file.is_empty() => predict(p, args, true)?,
        Command::Attribute(_) => {
            let mut cfg = p.config.clone();
            cfg.task = Task::Attribution;
            run(&Pipeline::new(cfg)?)?;
        }
        Command::Explain { method, metric, repeats } => {
            let model = p.load_model()?;
            let method = match method {
                MethodArg::Gain => ImportanceMethod::Gain,
                MethodArg::Permutation => ImportanceMethod::Permutation,
            };
            let metric = match metric {
                MetricArg::Accuracy => ImportanceMetric::Accuracy,
                MetricArg::MacroF1 => ImportanceMetric::MacroF1,
            };
            let val = match method {
                ImportanceMethod::Permutation => Some(p.load_features()?.val),
                ImportanceMethod::Gain => None,
            };
            let report = p.explain(&model, val.as_ref(), method, metric, *repeats)?;
            say!("{}", report.to_csv());
        }
        Command::Zeroshot => {
            let z = p.zeroshot(&qa_corpus(p)?)?;
            sayln!(
                "zeroshot ({}): accuracy {:.4} vs majority {:.4}, threshold {:.4}",
                z.backend, z.report.overall.accuracy, z.majority_accuracy, z.fit.threshold
            );
        }
        Command::Run => run(p)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let (args, overrides) = split_overrides(std::env::args().collect());
    let cli = Cli::parse_from(args);
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let result = load_config(&cli.global, &overrides)
        .and_then(Pipeline::new)
        .and_then(|p| dispatch(&cli.command, &p));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dotted_flags_become_overrides() {
        let args = ["codetect", "--out", "o", "--qa.dedup=false", "--seed=3", "run", "--model.trees=9"];
        let (rest, overrides) = split_overrides(args.iter().map(|s| s.to_string()).collect());
        assert_eq!(rest, ["codetect", "--out", "o", "--seed=3", "run"]);
        assert_eq!(
            overrides,
            [("qa.dedup".to_string(), "false".to_string()), ("model.trees".to_string(), "9".to_string())]
        );
        Cli::try_parse_from(rest).unwrap();
    }
}
