//! Tabular classifiers over feature matrices.

mod gbdt;
mod linear;
mod persist;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use gbdt::{column_cuts, GbdtConfig, GbdtModel, Tree, TreeNode};
pub use linear::{fit_platt, FourierMap, LinearConfig, LinearModel, Standardizer};
pub use persist::{
    load, model_digest, read_predictions, save, write_predictions, PredictionRecord,
    FORMAT_VERSION, MAGIC,
};

use crate::labels::LabelSpace;
use crate::scalar::Scalar;
use crate::stylometry::{FeatureMatrix, FeatureSchema};

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("degenerate labels: training needs at least two classes")]
    DegenerateLabels,
    #[error("feature schema mismatch: model expects {expected}, matrix has {found}")]
    SchemaMismatch { expected: String, found: String },
    #[error("corrupt model: {0}")]
    Corrupt(String),
    #[error("model format version {found} is not supported (this build reads version {supported})")]
    Version { found: u64, supported: u64 },
    #[error("model stores {found} values but {expected} was requested")]
    ScalarMismatch { expected: &'static str, found: String },
    #[error("invalid model configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Linear,
    Gbdt,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Linear => "linear",
            ModelKind::Gbdt => "gbdt",
        }
    }
}

/// Model choice plus its hyperparameters, e.g. `kind = "gbdt"` with the
/// gbdt fields alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelSpec {
    Linear(LinearConfig),
    Gbdt(GbdtConfig),
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec::Gbdt(GbdtConfig::default())
    }
}

impl ModelSpec {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelSpec::Linear(_) => ModelKind::Linear,
            ModelSpec::Gbdt(_) => ModelKind::Gbdt,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        match &mut self {
            ModelSpec::Linear(c) => c.seed = seed,
            ModelSpec::Gbdt(c) => c.seed = seed,
        }
        self
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            ModelSpec::Linear(c) => c.validate(),
            ModelSpec::Gbdt(c) => c.validate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", tag = "kind", content = "parameters", rename_all = "lowercase")]
pub enum ModelParams<T> {
    Linear(LinearModel<T>),
    Gbdt(GbdtModel<T>),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainingMetadata {
    pub config: Option<ModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_digest: Option<String>,
    /// Seconds since the Unix epoch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trained_at: Option<u64>,
    /// Zero-variance columns of the training matrix.
    #[serde(default)]
    pub constant_features: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub migration_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct TrainedModel<T> {
    pub label_space: LabelSpace,
    pub feature_names: Vec<String>,
    pub feature_schema_hash: String,
    /// Imputation medians, needed to featurize new code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feature_schema: Option<FeatureSchema<T>>,
    pub model: ModelParams<T>,
    pub metadata: TrainingMetadata,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction<T> {
    pub label: usize,
    pub scores: Vec<T>,
}

/// Index of the largest score; the earliest index wins ties.
pub fn argmax<T: PartialOrd + Copy>(scores: &[T]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate().skip(1) {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

fn check_trainable<T: Scalar>(matrix: &FeatureMatrix<T>) -> Result<(), ModelError> {
    let first = matrix.labels.first().ok_or(ModelError::DegenerateLabels)?;
    if matrix.labels.iter().all(|l| l == first) {
        return Err(ModelError::DegenerateLabels);
    }
    Ok(())
}

fn constant_features<T: Scalar>(matrix: &FeatureMatrix<T>) -> Vec<String> {
    (0..matrix.n_features())
        .filter(|&j| matrix.rows.iter().all(|r| r[j] == matrix.rows[0][j]))
        .map(|j| matrix.feature_names[j].clone())
        .collect()
}

fn wrap<T: Scalar>(matrix: &FeatureMatrix<T>, spec: ModelSpec, model: ModelParams<T>) -> TrainedModel<T> {
    TrainedModel {
        label_space: matrix.label_space.clone(),
        feature_names: matrix.feature_names.clone(),
        feature_schema_hash: matrix.schema_hash.clone(),
        feature_schema: None,
        model,
        metadata: TrainingMetadata {
            config: Some(spec),
            constant_features: constant_features(matrix),
            ..TrainingMetadata::default()
        },
    }
}

pub fn train_linear<T: Scalar>(
    matrix: &FeatureMatrix<T>,
    cfg: &LinearConfig,
) -> Result<TrainedModel<T>, ModelError> {
    check_trainable(matrix)?;
    let model = linear::train(matrix, cfg)?;
    Ok(wrap(matrix, ModelSpec::Linear(cfg.clone()), ModelParams::Linear(model)))
}

pub fn train_gbdt<T: Scalar>(
    matrix: &FeatureMatrix<T>,
    cfg: &GbdtConfig,
) -> Result<TrainedModel<T>, ModelError> {
    check_trainable(matrix)?;
    let model = gbdt::train(matrix, cfg)?;
    Ok(wrap(matrix, ModelSpec::Gbdt(cfg.clone()), ModelParams::Gbdt(model)))
}

pub fn train<T: Scalar>(matrix: &FeatureMatrix<T>, spec: &ModelSpec) -> Result<TrainedModel<T>, ModelError> {
    match spec {
        ModelSpec::Linear(cfg) => train_linear(matrix, cfg),
        ModelSpec::Gbdt(cfg) => train_gbdt(matrix, cfg),
    }
}

impl<T: Scalar> TrainedModel<T> {
    pub fn kind(&self) -> ModelKind {
        match self.model {
            ModelParams::Linear(_) => ModelKind::Linear,
            ModelParams::Gbdt(_) => ModelKind::Gbdt,
        }
    }

    pub fn with_schema(mut self, schema: FeatureSchema<T>) -> Self {
        self.feature_schema = Some(schema);
        self
    }

    pub fn check_schema(&self, matrix: &FeatureMatrix<T>) -> Result<(), ModelError> {
        if matrix.schema_hash != self.feature_schema_hash {
            return Err(ModelError::SchemaMismatch {
                expected: self.feature_schema_hash.clone(),
                found: matrix.schema_hash.clone(),
            });
        }
        Ok(())
    }

    /// Class probabilities for one row in label-space order.
    pub fn scores(&self, row: &[T]) -> Vec<T> {
        match &self.model {
            ModelParams::Linear(m) => m.scores(row),
            ModelParams::Gbdt(m) => m.scores(row),
        }
    }

    pub fn predict_row(&self, row: &[T]) -> Prediction<T> {
        let scores = self.scores(row);
        Prediction {
            label: argmax(&scores),
            scores,
        }
    }

    pub fn predict(&self, matrix: &FeatureMatrix<T>) -> Result<Vec<Prediction<T>>, ModelError> {
        self.check_schema(matrix)?;
        Ok(matrix.rows.par_iter().map(|r| self.predict_row(r)).collect())
    }

    /// Prediction records with gold labels taken from the matrix.
    pub fn prediction_records(&self, matrix: &FeatureMatrix<T>) -> Result<Vec<PredictionRecord>, ModelError> {
        let preds = self.predict(matrix)?;
        Ok(matrix
            .ids
            .iter()
            .zip(&matrix.labels)
            .zip(preds)
            .map(|((id, &gold), p)| PredictionRecord::new(id, Some(gold), &p, &self.label_space))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_prefers_first() {
        assert_eq!(argmax(&[0.5, 0.5]), 0);
        assert_eq!(argmax(&[0.2, 0.4, 0.4]), 1);
    }

    #[test]
    fn spec_from_toml() {
        let spec: ModelSpec = toml::from_str("kind = \"gbdt\"\ntrees = 5\n").unwrap();
        match spec {
            ModelSpec::Gbdt(c) => {
                assert_eq!(c.trees, 5);
                assert_eq!(c.max_depth, 6);
            }
            ModelSpec::Linear(_) => panic!("wrong kind"),
        }
        let spec: ModelSpec = toml::from_str("kind = \"linear\"\nrff_dims = 64\n").unwrap();
        assert_eq!(spec.kind(), ModelKind::Linear);
        assert!(toml::from_str::<ModelSpec>("kind = \"gbdt\"\ntress = 5\n").is_err());
    }
}
