//! Feature rankings for trained tabular models.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eval::{macro_metrics, Metrics};
use crate::models::{ModelError, ModelParams, TrainedModel};
use crate::scalar::Scalar;
use crate::stylometry::FeatureMatrix;

#[derive(Debug, thiserror::Error)]
pub enum ExplainError {
    #[error("linear models have no split gains; use permutation")]
    UsePermutation,
    #[error("repeats must be >= 1")]
    NoRepeats,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImportanceMethod {
    Gain,
    Permutation,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImportanceMetric {
    Accuracy,
    #[default]
    MacroF1,
}

impl ImportanceMetric {
    fn compute(self, preds: &[usize], golds: &[usize], n_classes: usize) -> f64 {
        let m: Metrics<f64> = macro_metrics(preds, golds, n_classes).expect("aligned labels");
        match self {
            ImportanceMetric::Accuracy => m.accuracy,
            ImportanceMetric::MacroF1 => m.f1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureScore {
    pub feature: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceReport {
    pub method: ImportanceMethod,
    /// Highest score first; equal scores by feature name.
    pub ranked: Vec<FeatureScore>,
    /// Unnormalized summed gain (gain method).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_gain: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<ImportanceMetric>,
    /// Metric on the unshuffled matrix (permutation method).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeats: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ImportanceReport {
    pub fn score(&self, feature: &str) -> Option<f64> {
        self.ranked.iter().find(|s| s.feature == feature).map(|s| s.score)
    }

    /// `feature,score` lines for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("feature,score\n");
        for s in &self.ranked {
            out.push_str(&format!("{},{}\n", s.feature, s.score));
        }
        out
    }
}

fn rank(names: &[String], scores: Vec<f64>) -> Vec<FeatureScore> {
    let mut ranked: Vec<FeatureScore> = names
        .iter()
        .cloned()
        .zip(scores)
        .map(|(feature, score)| FeatureScore { feature, score })
        .collect();
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.feature.cmp(&b.feature)));
    ranked
}

/// Per-feature summed split gain, normalized to sum to one.
pub fn gain_importance<T: Scalar>(model: &TrainedModel<T>) -> Result<ImportanceReport, ExplainError> {
    let ModelParams::Gbdt(ensemble) = &model.model else {
        return Err(ExplainError::UsePermutation);
    };
    let gains = ensemble.feature_gains(model.feature_names.len());
    let total: f64 = gains.iter().sum();
    let normalized = gains
        .into_iter()
        .map(|g| if total > 0.0 { g / total } else { 0.0 })
        .collect();
    Ok(ImportanceReport {
        method: ImportanceMethod::Gain,
        ranked: rank(&model.feature_names, normalized),
        total_gain: Some(total),
        metric: None,
        baseline: None,
        repeats: None,
        seed: None,
    })
}

fn permutation_seed(seed: u64, feature: usize, repeat: usize) -> u64 {
    seed ^ (feature as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (repeat as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
}

/// Mean drop of `metric` when one column at a time is shuffled.
pub fn permutation_importance<T: Scalar>(
    model: &TrainedModel<T>,
    matrix: &FeatureMatrix<T>,
    metric: ImportanceMetric,
    repeats: usize,
    seed: u64,
) -> Result<ImportanceReport, ExplainError> {
    if repeats == 0 {
        return Err(ExplainError::NoRepeats);
    }
    model.check_schema(matrix)?;
    let n_classes = model.label_space.len();
    let base_preds: Vec<usize> = model.predict(matrix)?.into_iter().map(|p| p.label).collect();
    let baseline = metric.compute(&base_preds, &matrix.labels, n_classes);

    let scores: Vec<f64> = (0..matrix.n_features())
        .into_par_iter()
        .map(|j| {
            let mut rows = matrix.rows.clone();
            let drops: f64 = (0..repeats)
                .map(|r| {
                    let mut column: Vec<T> = matrix.rows.iter().map(|row| row[j]).collect();
                    column.shuffle(&mut ChaCha8Rng::seed_from_u64(permutation_seed(seed, j, r)));
                    for (row, v) in rows.iter_mut().zip(column) {
                        row[j] = v;
                    }
                    let preds: Vec<usize> = rows.iter().map(|row| model.predict_row(row).label).collect();
                    baseline - metric.compute(&preds, &matrix.labels, n_classes)
                })
                .sum();
            drops / repeats as f64
        })
        .collect();

    Ok(ImportanceReport {
        method: ImportanceMethod::Permutation,
        ranked: rank(&model.feature_names, scores),
        total_gain: None,
        metric: Some(metric),
        baseline: Some(baseline),
        repeats: Some(repeats),
        seed: Some(seed),
    })
}
