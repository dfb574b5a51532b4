use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

fn config() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/run.toml")
}

fn codetect(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codetect"))
        .arg("--config")
        .arg(config())
        .arg("--out")
        .arg(out)
        .args(["--model.trees=40", "--zeroshot.perturbations=8"])
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Run {
    _dir: tempfile::TempDir,
    out: PathBuf,
}

fn trained() -> &'static Run {
    static RUN: OnceLock<Run> = OnceLock::new();
    RUN.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let o = codetect(&out, &["--jobs", "1", "run"]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("binary (in-domain)"));
        Run { _dir: dir, out }
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

fn json_lines(path: &Path) -> Vec<serde_json::Value> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn thread_count_does_not_change_artifacts() {
    let first = trained();
    let dir = tempfile::tempdir().unwrap();
    let o = codetect(dir.path(), &["--jobs", "3", "run"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let a = artifacts(&first.out);
    let b = artifacts(dir.path());
    assert_eq!(a.keys().collect::<Vec<_>>(), b.keys().collect::<Vec<_>>());
    for (name, bytes) in &a {
        if name == "model.json" {
            let strip = |b: &[u8]| {
                let mut v: serde_json::Value = serde_json::from_slice(b).unwrap();
                v["model"]["metadata"]["trained_at"] = serde_json::Value::Null;
                v
            };
            assert_eq!(strip(bytes), strip(&b[name]));
        } else {
            assert!(bytes == &b[name], "{name} differs");
        }
    }
}

#[test]
fn predict_matches_the_batch_predictions() {
    let run = trained();
    let corpus: BTreeMap<String, serde_json::Value> = json_lines(&run.out.join("corpus.qa.jsonl"))
        .into_iter()
        .map(|v| (v["id"].as_str().unwrap().to_string(), v))
        .collect();
    let records = json_lines(&run.out.join("predictions.jsonl"));
    let mut seen = BTreeMap::new();
    for r in &records {
        let pred = r["pred"].as_str().unwrap().to_string();
        seen.entry(pred).or_insert_with(|| r.clone());
    }
    assert_eq!(seen.len(), 2, "both labels occur in the batch file");

    let model = run.out.join("model.json");
    for (pred, record) in &seen {
        let sample = &corpus[record["id"].as_str().unwrap()];
        let o = codetect(
            &run.out,
            &[
                "predict",
                "--model",
                model.to_str().unwrap(),
                "--code",
                sample["code"].as_str().unwrap(),
                "--language",
                sample["language"].as_str().unwrap(),
            ],
        );
        assert!(o.status.success(), "{}", stderr(&o));
        let line: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(line["label"].as_str().unwrap(), pred);
        for (class, score) in record["scores"].as_object().unwrap() {
            let got = line["scores"][class].as_f64().unwrap();
            assert!((got - score.as_f64().unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn one_json_object_per_input() {
    let run = trained();
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("snippet.java");
    std::fs::write(&file, "class A { int f(int x) { return x * 2; } }\n").unwrap();
    let o = codetect(
        &run.out,
        &["predict", "--code", "x = 1\ny = x + 2\n", "--language", "python", "--file", file.to_str().unwrap()],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["input"], "code[0]");
    assert!(lines[1]["input"].as_str().unwrap().ends_with("snippet.java"));
}

#[test]
fn prediction_errors_name_the_stage_and_exit_2() {
    let run = trained();
    let o = codetect(&run.out, &["predict", "--code", "  ", "--language", "python"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("predict stage failed: empty input"), "{}", stderr(&o));

    let o = codetect(&run.out, &["predict", "--code", "x", "--language", "cobol"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("python, java, cpp"));

    let o = codetect(&run.out, &["attribute", "--code", "x = 1", "--language", "python"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not attribution"));
}

#[test]
fn bad_config_exits_2_before_creating_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let o = codetect(&out, &["--qa.low_percentile=60", "run"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("config stage failed"));
    assert!(!out.exists());

    let o = Command::new(env!("CARGO_BIN_EXE_codetect"))
        .args(["--config", "/definitely/missing.toml", "run"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn stage_out_of_order_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = codetect(dir.path(), &["featurize"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("featurize stage failed"), "{}", stderr(&o));
}

#[test]
fn external_predictions_score_like_the_internal_report() {
    let run = trained();
    let dir = tempfile::tempdir().unwrap();
    for name in ["corpus.qa.jsonl", "predictions.jsonl"] {
        std::fs::copy(run.out.join(name), dir.path().join(name)).unwrap();
    }
    let preds = dir.path().join("predictions.jsonl");
    let o = codetect(dir.path(), &["evaluate", "--predictions", preds.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let read = |p: &Path| -> serde_json::Value {
        serde_json::from_slice(&std::fs::read(p.join("eval_report.json")).unwrap()).unwrap()
    };
    let (internal, external) = (read(&run.out), read(dir.path()));
    assert_eq!(internal["overall"], external["overall"]);
    assert_eq!(internal["confusion"], external["confusion"]);
    assert_eq!(external["protocol"]["protocol"], "predictions");
}

#[test]
fn explain_writes_ranked_importances() {
    let run = trained();
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(run.out.join("model.json"), dir.path().join("model.json")).unwrap();
    let o = codetect(dir.path(), &["explain"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("feature,score\n"));
    let scores: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(scores.windows(2).all(|w| w[0] >= w[1]));
    assert!((scores.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    assert!(dir.path().join("importance.json").is_file());
}
