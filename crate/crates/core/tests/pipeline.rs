mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use codetect_core::corpus::{ingest, CodeSample, Split};
use codetect_core::models::{self, read_predictions};
use codetect_core::pipeline::{
    predict_single, ErrorKind, Pipeline, RunConfig, RunSummary, Stage, CORPUS_QA, EVAL_REPORT, MANIFEST, MODEL,
    PREDICTIONS,
};
use codetect_core::stylometry::FeatureOptions;
use codetect_core::synth;
use common::fixtures;

fn overrides(out: &Path) -> Vec<(String, String)> {
    [
        ("out_dir", format!("{:?}", out.display().to_string())),
        ("model.trees", "60".to_string()),
        ("zeroshot.perturbations", "8".to_string()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn config(out: &Path) -> RunConfig {
    RunConfig::load(&fixtures().join("run.toml"), &overrides(out)).unwrap()
}

struct Run {
    _dir: tempfile::TempDir,
    out: std::path::PathBuf,
    summary: RunSummary,
}

fn run_once() -> &'static Run {
    static RUN: OnceLock<Run> = OnceLock::new();
    RUN.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let summary = Pipeline::new(config(&out)).unwrap().run().unwrap();
        Run { _dir: dir, out, summary }
    })
}

fn artifacts(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&path).unwrap())
        })
        .collect()
}

fn without_timestamp(bytes: &[u8]) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
    v["model"]["metadata"]["trained_at"] = serde_json::Value::Null;
    v
}

#[test]
fn committed_corpus_is_the_generator_output() {
    let committed = ingest(&fixtures().join("corpus.jsonl")).unwrap();
    assert_eq!(committed, synth::fixture_corpus());
}

#[test]
fn identical_configs_give_identical_artifacts() {
    let first = run_once();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("again");
    let again = Pipeline::new(config(&out)).unwrap().run().unwrap();

    let a = artifacts(&first.out);
    let b = artifacts(&out);
    assert_eq!(a.keys().collect::<Vec<_>>(), b.keys().collect::<Vec<_>>());
    for (name, bytes) in &a {
        if name == MODEL {
            assert_eq!(without_timestamp(bytes), without_timestamp(&b[name]));
        } else {
            assert!(bytes == &b[name], "{name} differs between runs");
        }
    }
    assert_eq!(first.summary.manifest, again.manifest);
    assert_eq!(first.summary.report, again.report);
    assert!(a.contains_key(EVAL_REPORT) && a.contains_key(MANIFEST));
}

#[test]
fn manifest_digests_match_the_files() {
    use sha2::{Digest, Sha256};
    let run = run_once();
    let manifest = &run.summary.manifest;
    for (name, digest) in &manifest.artifacts {
        if name == MODEL {
            continue;
        }
        let bytes = std::fs::read(run.out.join(name)).unwrap();
        assert_eq!(&hex::encode(Sha256::digest(&bytes)), digest, "{name}");
    }
    let model = models::load::<f64>(&run.out.join(MODEL)).unwrap();
    assert_eq!(manifest.model_digest.as_deref(), Some(models::model_digest(&model).as_str()));
    assert_eq!(manifest.seed, 7);
}

#[test]
fn single_predictions_agree_with_the_batch_file() {
    let run = run_once();
    let model = models::load::<f64>(&run.out.join(MODEL)).unwrap();
    let samples: BTreeMap<String, CodeSample> = ingest(&run.out.join(CORPUS_QA))
        .unwrap()
        .into_iter()
        .map(|s| (s.id.clone(), s))
        .collect();
    let records = read_predictions(&run.out.join(PREDICTIONS)).unwrap();
    assert!(!records.is_empty());
    let mut labels = std::collections::BTreeSet::new();
    for r in records.iter().take(40) {
        let s = &samples[&r.id];
        assert_eq!(s.split, Some(Split::Test));
        let p = predict_single(&model, &s.code, s.language.as_str(), &FeatureOptions::default()).unwrap();
        assert_eq!(p.label, r.pred, "{}", r.id);
        for (class, score) in &r.scores {
            assert!((p.scores[class] - score).abs() < 1e-12, "{} {class}", r.id);
        }
        labels.insert(p.label);
    }
    assert_eq!(labels.len(), 2, "expected both labels among the first predictions");
}

#[test]
fn predict_single_rejects_bad_input() {
    let run = run_once();
    let model = models::load::<f64>(&run.out.join(MODEL)).unwrap();
    let opts = FeatureOptions::default();

    let err = predict_single(&model, "   \n", "python", &opts).unwrap_err();
    assert_eq!((err.stage, err.kind), (Stage::Predict, ErrorKind::Validation));
    assert!(err.to_string().contains("empty input"));

    let err = predict_single(&model, "main = print 1", "haskell", &opts).unwrap_err();
    assert_eq!(err.kind.exit_code(), 2);
    assert!(err.to_string().contains("python, java, cpp"), "{err}");

    let err = predict_single(&model, "# only a comment\n", "python", &opts).unwrap_err();
    assert!(err.to_string().contains("after comment removal"));

    let p = predict_single(&model, "}}}} ((( ;;; >>>", "java", &opts).unwrap();
    assert!(!p.parsed);
    assert_eq!(p.warnings.len(), 1);
    let total: f64 = p.scores.values().sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn invalid_config_fails_before_any_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let mut bad = overrides(&out);
    bad.push(("qa.low_percentile".into(), "70".into()));
    let cfg = RunConfig::load(&fixtures().join("run.toml"), &bad).unwrap();
    let err = Pipeline::new(cfg).err().unwrap();
    assert_eq!((err.stage, err.kind), (Stage::Config, ErrorKind::Validation));
    assert!(err.to_string().starts_with("config stage failed: "), "{err}");

    let mut missing = config(&out);
    missing.corpus.paths = vec![dir.path().join("nope.jsonl")];
    let err = Pipeline::new(missing).unwrap().run().unwrap_err();
    assert_eq!(err.kind.exit_code(), 2);
    assert!(err.to_string().contains("does not exist"));
    assert!(!out.exists(), "output directory created before validation");

    let unknown = RunConfig::from_toml("seed = 1\nbogus = 2\n", &[], None).unwrap_err();
    assert_eq!(unknown.kind, ErrorKind::Validation);
    let err = RunConfig::load(&dir.path().join("absent.toml"), &[]).unwrap_err();
    assert_eq!(err.kind.exit_code(), 4);
}

#[test]
fn overrides_and_digest() {
    let base = RunConfig::from_toml("seed = 3\n[qa]\ndedup = true\n", &[], None).unwrap();
    let flipped = RunConfig::from_toml(
        "seed = 3\n[qa]\ndedup = true\n",
        &[("qa.dedup".into(), "false".into()), ("model.learning_rate".into(), "0.05".into())],
        None,
    )
    .unwrap();
    assert!(!flipped.qa.dedup);
    assert_ne!(base.digest(), flipped.digest());

    let mut moved = base.clone();
    moved.out_dir = "/elsewhere".into();
    assert_eq!(base.digest(), moved.digest());
    assert_eq!(base.split_plan().seed, 3);
}
