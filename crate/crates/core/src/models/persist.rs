use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::{ModelError, Prediction, TrainedModel};
use crate::labels::LabelSpace;
use crate::scalar::Scalar;

pub const MAGIC: &str = "CODETECT-MODEL";
pub const FORMAT_VERSION: u64 = 2;

#[derive(Serialize)]
struct Envelope<'a, T: Scalar> {
    magic: &'static str,
    format_version: u64,
    scalar: &'static str,
    model: &'a TrainedModel<T>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ModelError + '_ {
    move |source| ModelError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn to_json<T: Scalar>(model: &TrainedModel<T>) -> String {
    serde_json::to_string(&Envelope {
        magic: MAGIC,
        format_version: FORMAT_VERSION,
        scalar: T::NAME,
        model,
    })
    .expect("model serializes")
}

pub fn save<T: Scalar>(model: &TrainedModel<T>, path: &Path) -> Result<(), ModelError> {
    fs::write(path, to_json(model)).map_err(io_err(path))
}

/// Digest of the serialized model with its training timestamp cleared.
pub fn model_digest<T: Scalar>(model: &TrainedModel<T>) -> String {
    let mut m = model.clone();
    m.metadata.trained_at = None;
    hex::encode(Sha256::digest(to_json(&m).as_bytes()))
}

/// Reads a model file. Version 1 files are migrated in memory and carry a
/// note in `metadata.migration_note`.
pub fn load<T: Scalar>(path: &Path) -> Result<TrainedModel<T>, ModelError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    from_str(&text)
}

pub(crate) fn from_str<T: Scalar>(text: &str) -> Result<TrainedModel<T>, ModelError> {
    let corrupt = |why: &str| ModelError::Corrupt(why.to_string());
    let mut doc: Value = serde_json::from_str(text).map_err(|e| corrupt(&e.to_string()))?;
    let obj = doc.as_object_mut().ok_or_else(|| corrupt("not an object"))?;
    if obj.get("magic").and_then(Value::as_str) != Some(MAGIC) {
        return Err(corrupt("bad magic"));
    }
    let version = obj
        .get("format_version")
        .and_then(Value::as_u64)
        .ok_or_else(|| corrupt("missing format_version"))?;
    let mut note = None;
    match version {
        FORMAT_VERSION => {}
        1 => {
            migrate_v1(obj)?;
            note = Some("migrated from model format version 1".to_string());
        }
        found => {
            return Err(ModelError::Version {
                found,
                supported: FORMAT_VERSION,
            })
        }
    }
    let scalar = obj
        .get("scalar")
        .and_then(Value::as_str)
        .ok_or_else(|| corrupt("missing scalar"))?;
    if scalar != T::NAME {
        return Err(ModelError::ScalarMismatch {
            expected: T::NAME,
            found: scalar.to_string(),
        });
    }
    let body = obj.remove("model").ok_or_else(|| corrupt("missing model"))?;
    let mut model: TrainedModel<T> = serde_json::from_value(body).map_err(|e| corrupt(&e.to_string()))?;
    if note.is_some() {
        model.metadata.migration_note = note;
    }
    Ok(model)
}

/// Version 1 had no scalar tag (always f64), called the schema hash
/// `schema_hash`, and the metadata block `training`.
fn migrate_v1(obj: &mut serde_json::Map<String, Value>) -> Result<(), ModelError> {
    obj.insert("scalar".into(), Value::String("f64".into()));
    let model = obj
        .get_mut("model")
        .and_then(Value::as_object_mut)
        .ok_or_else(|| ModelError::Corrupt("missing model".into()))?;
    for (old, new) in [("schema_hash", "feature_schema_hash"), ("training", "metadata")] {
        if let Some(v) = model.remove(old) {
            model.insert(new.into(), v);
        }
    }
    Ok(())
}

/// One line of a predictions file. Also the format external classifiers
/// emit for scoring by the evaluator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub id: String,
    #[serde(default)]
    pub gold: Option<String>,
    pub pred: String,
    pub scores: IndexMap<String, f64>,
}

impl PredictionRecord {
    pub fn new<T: Scalar>(id: &str, gold: Option<usize>, p: &Prediction<T>, space: &LabelSpace) -> Self {
        PredictionRecord {
            id: id.to_string(),
            gold: gold.map(|g| space.name(g).to_string()),
            pred: space.name(p.label).to_string(),
            scores: space
                .classes
                .iter()
                .cloned()
                .zip(p.scores.iter().map(|s| s.to_f64_lossy()))
                .collect(),
        }
    }
}

pub fn write_predictions(path: &Path, records: &[PredictionRecord]) -> Result<(), ModelError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    for r in records {
        let line = serde_json::to_string(r).expect("record serializes");
        writeln!(out, "{line}").map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

pub fn read_predictions(path: &Path) -> Result<Vec<PredictionRecord>, ModelError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut records = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| {
            ModelError::Corrupt(format!("{} line {}: {e}", path.display(), n + 1))
        })?;
        records.push(record);
    }
    Ok(records)
}
