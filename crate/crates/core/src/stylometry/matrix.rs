use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::features::FeatureVector;
use super::StylometryError;
use crate::labels::LabelSpace;
use crate::scalar::Scalar;

/// Digest of an ordered feature-name list.
pub fn schema_hash(feature_names: &[String]) -> String {
    let mut hasher = Sha256::new();
    for name in feature_names {
        hasher.update(name.as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

/// Retained features plus the fit-split medians used to fill gaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct FeatureSchema<T> {
    pub feature_names: Vec<String>,
    pub medians: Vec<T>,
    pub dropped: Vec<String>,
    pub max_missing: f64,
    pub schema_hash: String,
}

/// Column-aligned features for a set of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct FeatureMatrix<T> {
    pub feature_names: Vec<String>,
    pub schema_hash: String,
    pub label_space: LabelSpace,
    pub ids: Vec<String>,
    /// Gold class index per row.
    pub labels: Vec<usize>,
    pub rows: Vec<Vec<T>>,
    /// True where the value was imputed.
    pub missing: Vec<Vec<bool>>,
}

impl<T: Scalar> FeatureMatrix<T> {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// A matrix built directly from dense rows; used by model tests and
    /// synthetic benchmarks.
    pub fn from_dense(
        feature_names: Vec<String>,
        label_space: LabelSpace,
        rows: Vec<Vec<T>>,
        labels: Vec<usize>,
    ) -> Self {
        assert_eq!(rows.len(), labels.len(), "rows and labels differ in length");
        let n_features = feature_names.len();
        assert!(rows.iter().all(|r| r.len() == n_features), "ragged rows");
        FeatureMatrix {
            schema_hash: schema_hash(&feature_names),
            missing: vec![vec![false; n_features]; rows.len()],
            ids: (0..rows.len()).map(|i| format!("row{i}")).collect(),
            feature_names,
            label_space,
            labels,
            rows,
        }
    }

    /// Rows selected by index, in the given order.
    pub fn select(&self, indices: &[usize]) -> Self {
        FeatureMatrix {
            feature_names: self.feature_names.clone(),
            schema_hash: self.schema_hash.clone(),
            label_space: self.label_space.clone(),
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            missing: indices.iter().map(|&i| self.missing[i].clone()).collect(),
        }
    }
}

/// Median with the usual mean-of-middle-pair rule for even counts.
pub fn median<T: Scalar>(values: &mut [T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in feature values"));
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / T::lit(2.0)
    })
}

/// Chooses the retained features and their medians from the fitting rows.
/// A feature is kept when its missing fraction is at most `max_missing`.
pub fn fit_schema<T: Scalar>(
    fit_rows: &[&FeatureVector<T>],
    max_missing: f64,
) -> Result<FeatureSchema<T>, StylometryError> {
    if fit_rows.is_empty() {
        return Err(StylometryError::EmptyFitSet);
    }
    let candidates: BTreeSet<&str> = fit_rows
        .iter()
        .flat_map(|fv| fv.values.keys().map(String::as_str))
        .collect();

    let n = fit_rows.len() as f64;
    let mut feature_names = Vec::new();
    let mut medians = Vec::new();
    let mut dropped = Vec::new();
    for name in candidates {
        let mut present: Vec<T> = fit_rows.iter().filter_map(|fv| fv.get(name)).collect();
        let missing = fit_rows.len() - present.len();
        if missing as f64 <= max_missing * n + 1e-9 {
            feature_names.push(name.to_string());
            medians.push(median(&mut present).unwrap_or_else(T::zero));
        } else {
            dropped.push(name.to_string());
        }
    }
    if feature_names.is_empty() {
        return Err(StylometryError::AllFeaturesSparse);
    }
    Ok(FeatureSchema {
        schema_hash: schema_hash(&feature_names),
        feature_names,
        medians,
        dropped,
        max_missing,
    })
}

impl<T: Scalar> FeatureSchema<T> {
    /// Projects vectors onto the schema, imputing gaps with fit medians.
    pub fn apply(
        &self,
        vectors: &[&FeatureVector<T>],
        labels: &[usize],
        label_space: &LabelSpace,
    ) -> FeatureMatrix<T> {
        assert_eq!(vectors.len(), labels.len(), "vectors and labels differ in length");
        let mut rows = Vec::with_capacity(vectors.len());
        let mut missing = Vec::with_capacity(vectors.len());
        for fv in vectors {
            let mut row = Vec::with_capacity(self.feature_names.len());
            let mut mask = Vec::with_capacity(self.feature_names.len());
            for (name, &fill) in self.feature_names.iter().zip(&self.medians) {
                match fv.get(name) {
                    Some(v) => {
                        row.push(v);
                        mask.push(false);
                    }
                    None => {
                        row.push(fill);
                        mask.push(true);
                    }
                }
            }
            rows.push(row);
            missing.push(mask);
        }
        FeatureMatrix {
            feature_names: self.feature_names.clone(),
            schema_hash: self.schema_hash.clone(),
            label_space: label_space.clone(),
            ids: vectors.iter().map(|fv| fv.sample_id.clone()).collect(),
            labels: labels.to_vec(),
            rows,
            missing,
        }
    }

    /// Imputation table keyed by feature name.
    pub fn imputation_table(&self) -> BTreeMap<String, T> {
        self.feature_names
            .iter()
            .cloned()
            .zip(self.medians.iter().copied())
            .collect()
    }
}

/// Fits the schema on the rows flagged by `is_fit` and returns it with the
/// fitting matrix.
pub fn build_matrix<T: Scalar>(
    vectors: &[&FeatureVector<T>],
    labels: &[usize],
    is_fit: &[bool],
    label_space: &LabelSpace,
    max_missing: f64,
) -> Result<(FeatureMatrix<T>, FeatureSchema<T>), StylometryError> {
    let fit_idx: Vec<usize> = (0..vectors.len()).filter(|&i| is_fit[i]).collect();
    let fit_rows: Vec<&FeatureVector<T>> = fit_idx.iter().map(|&i| vectors[i]).collect();
    let fit_labels: Vec<usize> = fit_idx.iter().map(|&i| labels[i]).collect();
    let schema = fit_schema(&fit_rows, max_missing)?;
    let matrix = schema.apply(&fit_rows, &fit_labels, label_space);
    Ok((matrix, schema))
}

/// JSON written next to a feature CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MatrixSidecar<T> {
    pub schema_hash: String,
    pub label_space: LabelSpace,
    pub imputation: BTreeMap<String, T>,
    pub retained: Vec<String>,
    pub dropped: Vec<String>,
    pub max_missing: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_digest: Option<String>,
}

impl<T: Scalar> MatrixSidecar<T> {
    pub fn new(schema: &FeatureSchema<T>, label_space: &LabelSpace, config_digest: Option<String>) -> Self {
        MatrixSidecar {
            schema_hash: schema.schema_hash.clone(),
            label_space: label_space.clone(),
            imputation: schema.imputation_table(),
            retained: schema.feature_names.clone(),
            dropped: schema.dropped.clone(),
            max_missing: schema.max_missing,
            config_digest,
        }
    }

    pub fn schema(&self) -> FeatureSchema<T> {
        FeatureSchema {
            medians: self.retained.iter().map(|n| self.imputation[n]).collect(),
            feature_names: self.retained.clone(),
            dropped: self.dropped.clone(),
            max_missing: self.max_missing,
            schema_hash: self.schema_hash.clone(),
        }
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> StylometryError + '_ {
    move |e| StylometryError::Io(format!("{}: {e}", path.display()))
}

/// Writes `id,label,<features...>` with one row per sample.
pub fn write_csv<T: Scalar>(path: &Path, matrix: &FeatureMatrix<T>) -> Result<(), StylometryError> {
    let csv_err = |e: csv::Error| StylometryError::Io(format!("{}: {e}", path.display()));
    let mut writer = csv::Writer::from_path(path).map_err(csv_err)?;
    let mut header = vec!["id".to_string(), "label".to_string()];
    header.extend(matrix.feature_names.iter().cloned());
    writer.write_record(&header).map_err(csv_err)?;
    for ((id, &label), row) in matrix.ids.iter().zip(&matrix.labels).zip(&matrix.rows) {
        let mut record = vec![id.clone(), matrix.label_space.name(label).to_string()];
        record.extend(row.iter().map(|v| v.to_string()));
        writer.write_record(&record).map_err(csv_err)?;
    }
    writer.flush().map_err(io_err(path))
}

/// Reads a CSV written by [`write_csv`] against its sidecar.
pub fn read_csv<T: Scalar>(
    path: &Path,
    sidecar: &MatrixSidecar<T>,
) -> Result<FeatureMatrix<T>, StylometryError> {
    let csv_err = |e: csv::Error| StylometryError::Io(format!("{}: {e}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_err)?
        .iter()
        .skip(2)
        .map(str::to_string)
        .collect();
    if schema_hash(&header) != sidecar.schema_hash {
        return Err(StylometryError::SchemaMismatch {
            expected: sidecar.schema_hash.clone(),
            found: schema_hash(&header),
        });
    }
    let mut ids = Vec::new();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        ids.push(record[0].to_string());
        let label = sidecar
            .label_space
            .index_of(&record[1])
            .ok_or_else(|| StylometryError::Io(format!("unknown label `{}`", &record[1])))?;
        labels.push(label);
        let row = record
            .iter()
            .skip(2)
            .map(|v| {
                v.parse::<f64>()
                    .map(T::lit)
                    .map_err(|e| StylometryError::Io(format!("bad value `{v}`: {e}")))
            })
            .collect::<Result<Vec<T>, _>>()?;
        rows.push(row);
    }
    let n_features = header.len();
    Ok(FeatureMatrix {
        missing: vec![vec![false; n_features]; rows.len()],
        feature_names: header,
        schema_hash: sidecar.schema_hash.clone(),
        label_space: sidecar.label_space.clone(),
        ids,
        labels,
        rows,
    })
}

pub fn write_sidecar<T: Scalar>(path: &Path, sidecar: &MatrixSidecar<T>) -> Result<(), StylometryError> {
    let mut file = File::create(path).map_err(io_err(path))?;
    let text = serde_json::to_string_pretty(sidecar).expect("sidecar serializes");
    file.write_all(text.as_bytes()).map_err(io_err(path))
}

pub fn read_sidecar<T: Scalar>(path: &Path) -> Result<MatrixSidecar<T>, StylometryError> {
    let file = File::open(path).map_err(io_err(path))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| StylometryError::Io(format!("{}: {e}", path.display())))
}
