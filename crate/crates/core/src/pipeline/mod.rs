//! Stage wiring: ingest → qa → featurize → train → evaluate, plus the
//! out-of-domain protocol, the hybrid degradation curve and the zero-shot
//! baseline. Every stage reads and writes named artifacts in the output
//! directory, so stages can also be run one at a time.

mod config;
mod predict;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use config::{
    apply_override, CorpusSection, DegradationSection, ProcessSpec, Protocol, RunConfig, ZeroShotSection,
};
pub use predict::{predict_single, supported_languages, SinglePrediction};

use crate::corpus::{self, CodeSample, CorpusError, Label, Split};
use crate::eval::{self, DegradationCurve, EvalError, EvalReport, GroupKey, HoldOut, ProtocolMeta};
use crate::explain::{self, ExplainError, ImportanceMethod, ImportanceMetric, ImportanceReport};
use crate::labels::LabelSpace;
use crate::models::{self, ModelError, PredictionRecord, TrainedModel};
use crate::stylometry::{
    self, FeatureMatrix, FeatureSchema, FeatureVector, MatrixSidecar, Stylometer, StylometryError, TreeSitterBackend,
    AST_DEPTH,
};
use crate::zeroshot::{self, LikelihoodBackend, NgramBackend, ProcessBackend, ThresholdFit, ZeroShotError};

pub const CORPUS: &str = "corpus.jsonl";
pub const CORPUS_QA: &str = "corpus.qa.jsonl";
pub const QA_REPORT: &str = "qa_report.json";
pub const SPLIT_REPORT: &str = "split_report.json";
pub const SIDECAR: &str = "features.sidecar.json";
pub const MODEL: &str = "model.json";
pub const PREDICTIONS: &str = "predictions.jsonl";
pub const EVAL_REPORT: &str = "eval_report.json";
pub const EVAL_TABLE: &str = "eval_report.txt";
pub const CONFUSION: &str = "confusion.csv";
pub const DEGRADATION: &str = "degradation.json";
pub const ZEROSHOT: &str = "zeroshot.json";
pub const ZEROSHOT_PREDICTIONS: &str = "zeroshot_predictions.jsonl";
pub const MANIFEST: &str = "manifest.json";
pub const IMPORTANCE: &str = "importance.json";
pub const IMPORTANCE_CSV: &str = "importance.csv";

pub fn features_file(split: Split) -> String {
    format!("features.{}.csv", split.as_str())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Config,
    Ingest,
    Qa,
    Featurize,
    Train,
    Evaluate,
    Degradation,
    Zeroshot,
    Predict,
    Explain,
    Manifest,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Config => "config",
            Stage::Ingest => "ingest",
            Stage::Qa => "qa",
            Stage::Featurize => "featurize",
            Stage::Train => "train",
            Stage::Evaluate => "evaluate",
            Stage::Degradation => "degradation",
            Stage::Zeroshot => "zeroshot",
            Stage::Predict => "predict",
            Stage::Explain => "explain",
            Stage::Manifest => "manifest",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Stage,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Validation => 2,
            ErrorKind::Stage => 3,
            ErrorKind::Io => 4,
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{stage} stage failed: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub kind: ErrorKind,
    pub message: String,
}

impl PipelineError {
    pub fn new(stage: Stage, kind: ErrorKind, message: impl Into<String>) -> Self {
        PipelineError {
            stage,
            kind,
            message: message.into(),
        }
    }
}

/// Maps a module error onto the exit-code classes.
pub trait Classify: fmt::Display {
    fn kind(&self) -> ErrorKind;
}

impl Classify for CorpusError {
    fn kind(&self) -> ErrorKind {
        match self {
            CorpusError::InvalidConfig(_) => ErrorKind::Validation,
            CorpusError::Io { .. } => ErrorKind::Io,
            _ => ErrorKind::Stage,
        }
    }
}

impl Classify for StylometryError {
    fn kind(&self) -> ErrorKind {
        match self {
            StylometryError::Io(_) => ErrorKind::Io,
            _ => ErrorKind::Stage,
        }
    }
}

impl Classify for ModelError {
    fn kind(&self) -> ErrorKind {
        match self {
            ModelError::InvalidConfig(_) => ErrorKind::Validation,
            ModelError::Io { .. } => ErrorKind::Io,
            _ => ErrorKind::Stage,
        }
    }
}

impl Classify for EvalError {
    fn kind(&self) -> ErrorKind {
        match self {
            EvalError::Io(_) => ErrorKind::Io,
            _ => ErrorKind::Stage,
        }
    }
}

impl Classify for ZeroShotError {
    fn kind(&self) -> ErrorKind {
        match self {
            ZeroShotError::InvalidConfig(_) | ZeroShotError::TooFewPerturbations(_) => ErrorKind::Validation,
            ZeroShotError::EmptyInput => ErrorKind::Validation,
            _ => ErrorKind::Stage,
        }
    }
}

impl Classify for ExplainError {
    fn kind(&self) -> ErrorKind {
        match self {
            ExplainError::Model(e) => e.kind(),
            _ => ErrorKind::Validation,
        }
    }
}

pub trait StageResult<T> {
    fn at(self, stage: Stage) -> Result<T, PipelineError>;
}

impl<T, E: Classify> StageResult<T> for Result<T, E> {
    fn at(self, stage: Stage) -> Result<T, PipelineError> {
        self.map_err(|e| PipelineError::new(stage, e.kind(), e.to_string()))
    }
}

fn io_error(stage: Stage, path: &Path, e: impl fmt::Display) -> PipelineError {
    PipelineError::new(stage, ErrorKind::Io, format!("{}: {e}", path.display()))
}

pub fn write_json<S: Serialize>(stage: Stage, path: &Path, value: &S) -> Result<(), PipelineError> {
    let text = serde_json::to_string_pretty(value).expect("artifact serializes");
    std::fs::write(path, text + "\n").map_err(|e| io_error(stage, path, e))
}

pub fn read_json<D: serde::de::DeserializeOwned>(stage: Stage, path: &Path) -> Result<D, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(stage, path, e))?;
    serde_json::from_str(&text).map_err(|e| PipelineError::new(stage, ErrorKind::Stage, format!("{}: {e}", path.display())))
}

/// Digest of a corpus in its JSONL exchange form.
pub fn corpus_digest(samples: &[CodeSample]) -> String {
    let mut h = Sha256::new();
    for s in samples {
        h.update(serde_json::to_string(s).expect("sample serializes").as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub config_digest: String,
    pub counts: BTreeMap<String, usize>,
    /// Strata too small to split; all their samples went to train.
    pub small_strata: Vec<String>,
    pub mean_ast_depth: BTreeMap<String, f64>,
    /// Largest pairwise relative difference of the split means.
    pub max_relative_depth_gap: f64,
}

/// Feature matrices of the three splits under one schema.
#[derive(Debug, Clone)]
pub struct Featurized {
    pub label_space: LabelSpace,
    pub schema: FeatureSchema<f64>,
    pub train: FeatureMatrix<f64>,
    pub val: FeatureMatrix<f64>,
    pub test: FeatureMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegradationReport {
    pub config_digest: String,
    /// Hybrids scored by a binary model trained on pure train samples.
    pub n_hybrids: usize,
    pub curve: DegradationCurve,
    /// Strictly non-increasing over non-empty bins.
    pub non_increasing: bool,
    /// Non-increasing within the 95% sampling band.
    pub non_increasing_trend: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroShotReport {
    pub config_digest: String,
    pub backend: String,
    pub perturbations: usize,
    pub fit: ThresholdFit,
    /// Accuracy of always answering the majority test class.
    pub majority_accuracy: f64,
    pub mean_score_human: f64,
    pub mean_score_llm: f64,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config_digest: String,
    pub corpus_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_digest: Option<String>,
    pub seed: u64,
    /// sha256 of each artifact; the model file is listed by its
    /// timestamp-free model digest instead.
    pub artifacts: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub report: EvalReport,
    pub degradation: Option<DegradationReport>,
    pub zeroshot: Option<ZeroShotReport>,
    pub manifest: Manifest,
}

const GROUP_KEYS: [GroupKey; 3] = [GroupKey::Language, GroupKey::Source, GroupKey::Generator];

pub struct Pipeline {
    pub config: RunConfig,
    pub digest: String,
}

impl Pipeline {
    pub fn new(config: RunConfig) -> Result<Self, PipelineError> {
        config.validate()?;
        let digest = config.digest();
        Ok(Pipeline { config, digest })
    }

    pub fn out(&self, name: &str) -> PathBuf {
        self.config.out_dir.join(name)
    }

    fn ensure_out(&self, stage: Stage) -> Result<(), PipelineError> {
        std::fs::create_dir_all(&self.config.out_dir).map_err(|e| io_error(stage, &self.config.out_dir, e))
    }

    fn stylometer(&self) -> Stylometer<'static> {
        Stylometer::new(&TreeSitterBackend, self.config.features.clone())
    }

    pub fn ingest(&self) -> Result<Vec<CodeSample>, PipelineError> {
        self.config.validate_paths()?;
        self.ensure_out(Stage::Ingest)?;
        let mut samples = Vec::new();
        for path in &self.config.corpus.paths {
            samples.extend(corpus::ingest(path).at(Stage::Ingest)?);
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = samples.iter().find(|s| !seen.insert(s.id.as_str())) {
            return Err(PipelineError::new(
                Stage::Ingest,
                ErrorKind::Stage,
                format!("duplicate sample id `{}`", dup.id),
            ));
        }
        corpus::write_jsonl(&self.out(CORPUS), &samples).at(Stage::Ingest)?;
        Ok(samples)
    }

    /// Comment stripping, length filter, dedup, parse check and split
    /// assignment.
    pub fn qa(&self, samples: Vec<CodeSample>) -> Result<Vec<CodeSample>, PipelineError> {
        self.ensure_out(Stage::Qa)?;
        let (kept, mut report) = corpus::run_qa(samples, &self.config.qa).at(Stage::Qa)?;
        let stylometer = self.stylometer();
        let depths: Vec<Option<f64>> = kept
            .par_iter()
            .map(|s| match stylometer.summarize(&s.code, &s.language) {
                Ok(summary) => Some(summary.max_depth as f64),
                Err(StylometryError::UnsupportedLanguage(_)) => Some(f64::NAN),
                Err(_) => None,
            })
            .collect();
        let mut parsed = Vec::with_capacity(kept.len());
        let mut parsed_depths = Vec::with_capacity(kept.len());
        for (s, d) in kept.into_iter().zip(depths) {
            match d {
                Some(d) => {
                    parsed.push(s);
                    parsed_depths.push(d);
                }
                None => report.dropped_unparsable += 1,
            }
        }
        if parsed.is_empty() {
            return Err(PipelineError::new(Stage::Qa, ErrorKind::Stage, "empty corpus"));
        }
        let outcome = corpus::assign_splits(parsed, &self.config.split_plan()).at(Stage::Qa)?;
        report.small_strata = outcome.small_strata.clone();
        report.config_digest = Some(self.digest.clone());
        let samples = outcome.samples;

        let mut counts = BTreeMap::new();
        let mut depth_sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
        for (s, d) in samples.iter().zip(&parsed_depths) {
            let split = s.split.expect("assigned").as_str().to_string();
            *counts.entry(split.clone()).or_insert(0) += 1;
            if d.is_finite() {
                let e = depth_sums.entry(split).or_insert((0.0, 0));
                e.0 += d;
                e.1 += 1;
            }
        }
        let mean_ast_depth: BTreeMap<String, f64> =
            depth_sums.into_iter().map(|(k, (sum, n))| (k, sum / n as f64)).collect();
        let means: Vec<f64> = mean_ast_depth.values().copied().collect();
        let mut gap: f64 = 0.0;
        for a in &means {
            for b in &means {
                gap = gap.max((a - b).abs() / a.min(*b));
            }
        }
        let split_report = SplitReport {
            config_digest: self.digest.clone(),
            counts,
            small_strata: outcome.small_strata,
            mean_ast_depth,
            max_relative_depth_gap: gap,
        };
        write_json(Stage::Qa, &self.out(QA_REPORT), &report)?;
        write_json(Stage::Qa, &self.out(SPLIT_REPORT), &split_report)?;
        corpus::write_jsonl(&self.out(CORPUS_QA), &samples).at(Stage::Qa)?;
        Ok(samples)
    }

    pub fn load_qa_corpus(&self) -> Result<Vec<CodeSample>, PipelineError> {
        let path = self.out(CORPUS_QA);
        if !path.is_file() {
            return Err(io_error(Stage::Featurize, &path, "missing; run the qa stage first"));
        }
        corpus::ingest(&path).at(Stage::Featurize)
    }

    pub fn extract(&self, samples: &[CodeSample]) -> Vec<FeatureVector<f64>> {
        let stylometer = self.stylometer();
        samples.par_iter().map(|s| stylometer.extract(s)).collect()
    }

    pub fn featurize(&self, samples: &[CodeSample]) -> Result<Featurized, PipelineError> {
        self.ensure_out(Stage::Featurize)?;
        let space = LabelSpace::for_task(self.config.task, samples);
        let vectors = self.extract(samples);
        let mut parts: [(Vec<&FeatureVector<f64>>, Vec<usize>); 3] = Default::default();
        for (s, v) in samples.iter().zip(&vectors) {
            let (Some(class), Some(split)) = (space.class_of(s), s.split) else {
                continue;
            };
            parts[split.index()].0.push(v);
            parts[split.index()].1.push(class);
        }
        let schema = stylometry::fit_schema(&parts[0].0, self.config.features.max_missing).at(Stage::Featurize)?;
        let [train, val, test] = parts.map(|(v, l)| schema.apply(&v, &l, &space));
        for (split, m) in Split::ALL.iter().zip([&train, &val, &test]) {
            stylometry::write_csv(&self.out(&features_file(*split)), m).at(Stage::Featurize)?;
        }
        let sidecar = MatrixSidecar::new(&schema, &space, Some(self.digest.clone()));
        stylometry::write_sidecar(&self.out(SIDECAR), &sidecar).at(Stage::Featurize)?;
        Ok(Featurized {
            label_space: space,
            schema,
            train,
            val,
            test,
        })
    }

    pub fn load_features(&self) -> Result<Featurized, PipelineError> {
        let sidecar: MatrixSidecar<f64> = stylometry::read_sidecar(&self.out(SIDECAR)).at(Stage::Train)?;
        let read = |split: Split| {
            stylometry::read_csv(&self.out(&features_file(split)), &sidecar)
                .at(Stage::Train)
        };
        Ok(Featurized {
            label_space: sidecar.label_space.clone(),
            schema: sidecar.schema(),
            train: read(Split::Train)?,
            val: read(Split::Val)?,
            test: read(Split::Test)?,
        })
    }

    fn fit_model(
        &self,
        stage: Stage,
        matrix: &FeatureMatrix<f64>,
        schema: &FeatureSchema<f64>,
        corpus_digest: Option<String>,
    ) -> Result<TrainedModel<f64>, PipelineError> {
        let mut model = models::train(matrix, &self.config.model_spec()).at(stage)?.with_schema(schema.clone());
        model.metadata.config_digest = Some(self.digest.clone());
        model.metadata.corpus_digest = corpus_digest;
        model.metadata.trained_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        Ok(model)
    }

    pub fn train(&self, features: &Featurized, corpus_digest: Option<String>) -> Result<TrainedModel<f64>, PipelineError> {
        self.ensure_out(Stage::Train)?;
        let model = self.fit_model(Stage::Train, &features.train, &features.schema, corpus_digest)?;
        models::save(&model, &self.out(MODEL)).at(Stage::Train)?;
        Ok(model)
    }

    pub fn load_model(&self) -> Result<TrainedModel<f64>, PipelineError> {
        models::load(&self.out(MODEL)).at(Stage::Evaluate)
    }

    pub fn protocol_meta(&self, protocol: &str, hold_out: Option<HoldOut>, corpus: Option<String>, model: Option<String>) -> ProtocolMeta {
        ProtocolMeta {
            protocol: protocol.into(),
            hold_out,
            filters: vec![format!(
                "qa: tokens within p{}..p{}{}{}",
                self.config.qa.low_percentile,
                self.config.qa.high_percentile,
                if self.config.qa.per_language { " per language" } else { "" },
                if self.config.qa.dedup { ", deduplicated" } else { "" },
            )],
            corpus_digest: corpus,
            model_digest: model,
            config_digest: Some(self.digest.clone()),
            seed: Some(self.config.seed),
        }
    }

    fn write_eval(&self, report: &EvalReport, records: &[PredictionRecord], title: &str) -> Result<(), PipelineError> {
        models::write_predictions(&self.out(PREDICTIONS), records).at(Stage::Evaluate)?;
        report.save(&self.out(EVAL_REPORT)).at(Stage::Evaluate)?;
        let table = report.render(title);
        std::fs::write(self.out(EVAL_TABLE), table).map_err(|e| io_error(Stage::Evaluate, &self.out(EVAL_TABLE), e))?;
        std::fs::write(self.out(CONFUSION), report.confusion_csv())
            .map_err(|e| io_error(Stage::Evaluate, &self.out(CONFUSION), e))
    }

    /// Scores `matrix` and writes predictions plus the report.
    pub fn evaluate(
        &self,
        model: &TrainedModel<f64>,
        matrix: &FeatureMatrix<f64>,
        samples: &[CodeSample],
        protocol: ProtocolMeta,
    ) -> Result<EvalReport, PipelineError> {
        self.ensure_out(Stage::Evaluate)?;
        let records = model.prediction_records(matrix).at(Stage::Evaluate)?;
        let report =
            eval::evaluate_records(&records, samples, &model.label_space, &GROUP_KEYS, protocol).at(Stage::Evaluate)?;
        let title = format!("{} {} ({})", model.kind().as_str(), report.task, report.protocol.protocol);
        self.write_eval(&report, &records, &title)?;
        Ok(report)
    }

    /// Scores an external predictions file, such as one exported by a
    /// fine-tuned encoder, against the gold labels of `samples`.
    pub fn evaluate_predictions(&self, path: &Path, samples: &[CodeSample]) -> Result<EvalReport, PipelineError> {
        let records = models::read_predictions(path).at(Stage::Evaluate)?;
        let space = LabelSpace::for_task(self.config.task, samples);
        let meta = self.protocol_meta("predictions", None, Some(corpus_digest(samples)), None);
        let report = eval::evaluate_records(&records, samples, &space, &GROUP_KEYS, meta).at(Stage::Evaluate)?;
        self.ensure_out(Stage::Evaluate)?;
        report.save(&self.out(EVAL_REPORT)).at(Stage::Evaluate)?;
        let table = report.render(&format!("{} {} (predictions)", path.display(), report.task));
        std::fs::write(self.out(EVAL_TABLE), table).map_err(|e| io_error(Stage::Evaluate, &self.out(EVAL_TABLE), e))?;
        std::fs::write(self.out(CONFUSION), report.confusion_csv())
            .map_err(|e| io_error(Stage::Evaluate, &self.out(CONFUSION), e))?;
        Ok(report)
    }

    /// Trains without any sample that carries a held-out value and tests on
    /// the samples that carry all of them.
    pub fn run_ood(&self, samples: &[CodeSample], hold_out: &HoldOut) -> Result<EvalReport, PipelineError> {
        self.ensure_out(Stage::Evaluate)?;
        let split = eval::ood_split(samples, hold_out).at(Stage::Featurize)?;
        let space = LabelSpace::for_task(self.config.task, samples);
        let train_samples: Vec<CodeSample> = split.train.iter().map(|&i| samples[i].clone()).collect();
        let test_samples: Vec<CodeSample> = split.test.iter().map(|&i| samples[i].clone()).collect();

        let project = |set: &[CodeSample]| -> (Vec<FeatureVector<f64>>, Vec<usize>) {
            let keep: Vec<&CodeSample> = set.iter().filter(|s| space.class_of(s).is_some()).collect();
            let owned: Vec<CodeSample> = keep.iter().map(|s| (*s).clone()).collect();
            let labels = keep.iter().map(|s| space.class_of(s).expect("filtered")).collect();
            (self.extract(&owned), labels)
        };
        let (train_vecs, train_labels) = project(&train_samples);
        let (test_vecs, test_labels) = project(&test_samples);
        if train_vecs.is_empty() || test_vecs.is_empty() {
            return Err(PipelineError::new(
                Stage::Featurize,
                ErrorKind::Stage,
                "ood protocol left no labeled samples for this task",
            ));
        }
        let train_refs: Vec<&FeatureVector<f64>> = train_vecs.iter().collect();
        let test_refs: Vec<&FeatureVector<f64>> = test_vecs.iter().collect();
        let schema = stylometry::fit_schema(&train_refs, self.config.features.max_missing).at(Stage::Featurize)?;
        let train = schema.apply(&train_refs, &train_labels, &space);
        let test = schema.apply(&test_refs, &test_labels, &space);

        let digest = corpus_digest(samples);
        let model = self.fit_model(Stage::Train, &train, &schema, Some(digest.clone()))?;
        models::save(&model, &self.out(MODEL)).at(Stage::Train)?;
        let meta = self.protocol_meta("ood", Some(hold_out.clone()), Some(digest), Some(models::model_digest(&model)));
        self.evaluate(&model, &test, samples, meta)
    }

    /// Accuracy of a pure-data binary model on annotated hybrids, per
    /// human-fraction bin. `None` when the corpus has no annotated hybrids.
    pub fn degradation(&self, samples: &[CodeSample]) -> Result<Option<DegradationReport>, PipelineError> {
        let hybrids: Vec<CodeSample> = samples
            .iter()
            .filter(|s| s.label == Label::Hybrid && s.human_fraction.is_some())
            .cloned()
            .collect();
        if hybrids.is_empty() {
            return Ok(None);
        }
        let pure: Vec<CodeSample> = samples
            .iter()
            .filter(|s| s.label != Label::Hybrid && s.split == Some(Split::Train))
            .cloned()
            .collect();
        let space = LabelSpace::binary();
        let pure_vecs = self.extract(&pure);
        let pure_refs: Vec<&FeatureVector<f64>> = pure_vecs.iter().collect();
        let pure_labels: Vec<usize> = pure.iter().map(|s| space.class_of(s).expect("binary")).collect();
        let schema = stylometry::fit_schema(&pure_refs, self.config.features.max_missing).at(Stage::Degradation)?;
        let train = schema.apply(&pure_refs, &pure_labels, &space);
        let model = models::train(&train, &self.config.model_spec()).at(Stage::Degradation)?;

        let hybrid_vecs = self.extract(&hybrids);
        let hybrid_refs: Vec<&FeatureVector<f64>> = hybrid_vecs.iter().collect();
        let golds: Vec<usize> = hybrids.iter().map(|s| space.class_of(s).expect("binary")).collect();
        let matrix = schema.apply(&hybrid_refs, &golds, &space);
        let preds: Vec<usize> = model.predict(&matrix).at(Stage::Degradation)?.into_iter().map(|p| p.label).collect();
        let fractions: Vec<f64> = hybrids.iter().map(|s| s.human_fraction.expect("filtered")).collect();
        let curve = eval::degradation_curve(&preds, &golds, &fractions, space.len(), self.config.degradation.bins)
            .at(Stage::Degradation)?;
        let report = DegradationReport {
            config_digest: self.digest.clone(),
            n_hybrids: hybrids.len(),
            non_increasing: curve.is_non_increasing(),
            non_increasing_trend: curve.is_non_increasing_within(eval::TREND_Z),
            curve,
        };
        self.ensure_out(Stage::Degradation)?;
        write_json(Stage::Degradation, &self.out(DEGRADATION), &report)?;
        Ok(Some(report))
    }

    fn zeroshot_backend(&self, samples: &[CodeSample]) -> Result<Box<dyn LikelihoodBackend>, PipelineError> {
        if let Some(p) = &self.config.zeroshot.process {
            return Ok(Box::new(ProcessBackend::new(p.program.clone(), p.args.clone())));
        }
        let human_train = samples
            .iter()
            .filter(|s| s.label == Label::Human && s.split == Some(Split::Train))
            .map(|s| s.code.as_str());
        Ok(Box::new(NgramBackend::train(human_train, &self.config.zeroshot.ngram).at(Stage::Zeroshot)?))
    }

    /// Curvature baseline on pure human and llm samples: threshold fitted
    /// on val, evaluated on test.
    pub fn zeroshot(&self, samples: &[CodeSample]) -> Result<ZeroShotReport, PipelineError> {
        let backend = self.zeroshot_backend(samples)?;
        let space = LabelSpace::binary();
        let k = self.config.zeroshot.perturbations;
        let pick = |split: Split| -> Vec<&CodeSample> {
            samples
                .iter()
                .filter(|s| s.split == Some(split) && s.label != Label::Hybrid)
                .collect()
        };
        let score = |set: &[&CodeSample]| -> Result<Vec<f64>, PipelineError> {
            let items: Vec<(&str, &str)> = set.iter().map(|s| (s.id.as_str(), s.code.as_str())).collect();
            zeroshot::score_batch(&items, backend.as_ref(), k, self.config.seed).at(Stage::Zeroshot)
        };
        let is_llm = |s: &&CodeSample| s.label != Label::Human;

        let val = pick(Split::Val);
        let test = pick(Split::Test);
        if test.is_empty() {
            return Err(PipelineError::new(Stage::Zeroshot, ErrorKind::Stage, "empty test split"));
        }
        let val_scores = score(&val)?;
        let val_golds: Vec<bool> = val.iter().map(is_llm).collect();
        let fit = zeroshot::fit_threshold(&val_scores, &val_golds).at(Stage::Zeroshot)?;
        if fit.inverted_polarity {
            log::warn!("zero-shot scores have inverted polarity on the validation split");
        }

        let test_scores = score(&test)?;
        let golds: Vec<usize> = test.iter().map(|s| space.class_of(s).expect("binary")).collect();
        let preds: Vec<usize> = test_scores.iter().map(|&s| usize::from(zeroshot::decide(s, fit.threshold))).collect();
        let owned: Vec<&CodeSample> = test.to_vec();
        let meta = self.protocol_meta("zeroshot", None, Some(corpus_digest(samples)), None);
        let report = EvalReport::build(&space, &preds, &golds, &owned, &[GroupKey::Language], meta).at(Stage::Zeroshot)?;

        let n_llm = golds.iter().filter(|&&g| g == 1).count();
        let majority_accuracy = n_llm.max(golds.len() - n_llm) as f64 / golds.len() as f64;
        let mean = |want: bool| {
            let v: Vec<f64> = test_scores.iter().zip(&test).filter(|(_, s)| is_llm(s) == want).map(|(x, _)| *x).collect();
            if v.is_empty() {
                f64::NAN
            } else {
                v.iter().sum::<f64>() / v.len() as f64
            }
        };
        let records: Vec<PredictionRecord> = test
            .iter()
            .zip(&test_scores)
            .zip(&preds)
            .map(|((s, &score), &p)| PredictionRecord {
                id: s.id.clone(),
                gold: Some(space.name(space.class_of(s).expect("binary")).to_string()),
                pred: space.name(p).to_string(),
                scores: [("curvature".to_string(), score)].into_iter().collect(),
            })
            .collect();
        let out = ZeroShotReport {
            config_digest: self.digest.clone(),
            backend: backend.name().to_string(),
            perturbations: k,
            fit,
            majority_accuracy,
            mean_score_human: mean(false),
            mean_score_llm: mean(true),
            report,
        };
        self.ensure_out(Stage::Zeroshot)?;
        models::write_predictions(&self.out(ZEROSHOT_PREDICTIONS), &records).at(Stage::Zeroshot)?;
        write_json(Stage::Zeroshot, &self.out(ZEROSHOT), &out)?;
        Ok(out)
    }

    /// Ranks features of `model`. Permutation importance needs `matrix`,
    /// normally the validation split.
    pub fn explain(
        &self,
        model: &TrainedModel<f64>,
        matrix: Option<&FeatureMatrix<f64>>,
        method: ImportanceMethod,
        metric: ImportanceMetric,
        repeats: usize,
    ) -> Result<ImportanceReport, PipelineError> {
        let report = match method {
            ImportanceMethod::Gain => explain::gain_importance(model),
            ImportanceMethod::Permutation => {
                let matrix = matrix.ok_or_else(|| {
                    PipelineError::new(Stage::Explain, ErrorKind::Validation, "permutation importance needs a feature matrix")
                })?;
                explain::permutation_importance(model, matrix, metric, repeats, self.config.seed)
            }
        }
        .at(Stage::Explain)?;
        self.ensure_out(Stage::Explain)?;
        write_json(Stage::Explain, &self.out(IMPORTANCE), &report)?;
        std::fs::write(self.out(IMPORTANCE_CSV), report.to_csv())
            .map_err(|e| io_error(Stage::Explain, &self.out(IMPORTANCE_CSV), e))?;
        Ok(report)
    }

    pub fn manifest(&self, corpus_digest: String, model_digest: Option<String>) -> Result<Manifest, PipelineError> {
        let mut artifacts = BTreeMap::new();
        let mut names: Vec<String> = [
            CORPUS,
            CORPUS_QA,
            QA_REPORT,
            SPLIT_REPORT,
            SIDECAR,
            PREDICTIONS,
            EVAL_REPORT,
            EVAL_TABLE,
            CONFUSION,
            DEGRADATION,
            ZEROSHOT,
            ZEROSHOT_PREDICTIONS,
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        names.extend(Split::ALL.iter().map(|s| features_file(*s)));
        for name in names {
            let path = self.out(&name);
            if let Ok(bytes) = std::fs::read(&path) {
                artifacts.insert(name, hex::encode(Sha256::digest(&bytes)));
            }
        }
        if let Some(d) = &model_digest {
            artifacts.insert(MODEL.to_string(), d.clone());
        }
        let manifest = Manifest {
            config_digest: self.digest.clone(),
            corpus_digest,
            model_digest,
            seed: self.config.seed,
            artifacts,
        };
        write_json(Stage::Manifest, &self.out(MANIFEST), &manifest)?;
        Ok(manifest)
    }

    /// Every stage in order.
    pub fn run(&self) -> Result<RunSummary, PipelineError> {
        let ingested = self.ingest()?;
        let samples = self.qa(ingested)?;
        let digest = corpus_digest(&samples);
        let (report, model_digest) = match &self.config.protocol {
            Protocol::InDomain => {
                let features = self.featurize(&samples)?;
                let model = self.train(&features, Some(digest.clone()))?;
                let model_digest = models::model_digest(&model);
                let meta = self.protocol_meta("in-domain", None, Some(digest.clone()), Some(model_digest.clone()));
                (self.evaluate(&model, &features.test, &samples, meta)?, model_digest)
            }
            Protocol::Ood { hold_out } => {
                let report = self.run_ood(&samples, hold_out)?;
                let digest = report.protocol.model_digest.clone().unwrap_or_default();
                (report, digest)
            }
        };
        let degradation = if self.config.degradation.enabled {
            self.degradation(&samples)?
        } else {
            None
        };
        let zeroshot = if self.config.zeroshot.enabled {
            Some(self.zeroshot(&samples)?)
        } else {
            None
        };
        let manifest = self.manifest(digest, Some(model_digest))?;
        Ok(RunSummary {
            report,
            degradation,
            zeroshot,
            manifest,
        })
    }
}

/// Mean AST depth of one split, for callers that only have samples.
pub fn mean_ast_depth(samples: &[CodeSample]) -> Option<f64> {
    let stylometer = Stylometer::new(&TreeSitterBackend, Default::default());
    let depths: Vec<f64> = samples
        .iter()
        .filter_map(|s| stylometer.extract::<f64>(s).get(AST_DEPTH))
        .collect();
    (!depths.is_empty()).then(|| depths.iter().sum::<f64>() / depths.len() as f64)
}
