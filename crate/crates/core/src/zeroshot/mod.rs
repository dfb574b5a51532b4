//! Training-free detection by probability curvature: how much more likely a
//! snippet is under a language model than the model's own resamples of it.

mod ngram;
mod process;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use ngram::{NgramBackend, NgramConfig};
pub use process::{BackendReply, BackendRequest, ProcessBackend};

use crate::eval::binary_macro_f1;

/// Lower bound on the perturbation standard deviation.
pub const MIN_STDEV: f64 = 1e-8;
pub const DEFAULT_PERTURBATIONS: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum ZeroShotError {
    #[error("empty input")]
    EmptyInput,
    #[error("need at least 2 perturbations, got {0}")]
    TooFewPerturbations(usize),
    #[error("threshold fitting needs both classes; got only {0}")]
    SingleClass(&'static str),
    #[error("{0} scores but {1} gold labels")]
    LengthMismatch(usize, usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("likelihood backend `{backend}`: {reason}")]
    Backend { backend: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    /// Resampled text, when the backend exposes it.
    pub text: Option<String>,
    pub log_likelihood: f64,
}

/// Log-likelihood of a snippet and of `k` perturbations of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub log_likelihood: f64,
    pub perturbation_log_likelihoods: Vec<f64>,
}

pub trait LikelihoodBackend: Send + Sync {
    fn name(&self) -> &str;

    /// Sum of token log-probabilities.
    fn log_likelihood(&self, code: &str) -> Result<f64, ZeroShotError>;

    fn sample_perturbations(&self, code: &str, k: usize, seed: u64) -> Result<Vec<Perturbation>, ZeroShotError>;

    fn evaluate(&self, code: &str, k: usize, seed: u64) -> Result<Evaluation, ZeroShotError> {
        Ok(Evaluation {
            log_likelihood: self.log_likelihood(code)?,
            perturbation_log_likelihoods: self
                .sample_perturbations(code, k, seed)?
                .into_iter()
                .map(|p| p.log_likelihood)
                .collect(),
        })
    }

    /// Evaluates many snippets; item `i` uses `item_seed(seed, ids[i])`.
    fn evaluate_batch(&self, items: &[(&str, &str)], k: usize, seed: u64) -> Result<Vec<Evaluation>, ZeroShotError> {
        items
            .par_iter()
            .map(|(id, code)| self.evaluate(code, k, item_seed(seed, id)))
            .collect()
    }
}

/// Per-sample seed, independent of batch order.
pub fn item_seed(seed: u64, id: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(id.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

/// `(l - mean) / max(stdev, MIN_STDEV)` with the population standard
/// deviation of the perturbation log-likelihoods.
pub fn curvature_from(eval: &Evaluation) -> Result<f64, ZeroShotError> {
    let p = &eval.perturbation_log_likelihoods;
    if p.len() < 2 {
        return Err(ZeroShotError::TooFewPerturbations(p.len()));
    }
    let n = p.len() as f64;
    let mean = p.iter().sum::<f64>() / n;
    let var = p.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok((eval.log_likelihood - mean) / var.sqrt().max(MIN_STDEV))
}

pub fn curvature_score(
    code: &str,
    backend: &dyn LikelihoodBackend,
    k: usize,
    seed: u64,
) -> Result<f64, ZeroShotError> {
    if code.is_empty() {
        return Err(ZeroShotError::EmptyInput);
    }
    if k < 2 {
        return Err(ZeroShotError::TooFewPerturbations(k));
    }
    curvature_from(&backend.evaluate(code, k, seed)?)
}

/// Scores for `(id, code)` pairs.
pub fn score_batch(
    items: &[(&str, &str)],
    backend: &dyn LikelihoodBackend,
    k: usize,
    seed: u64,
) -> Result<Vec<f64>, ZeroShotError> {
    if k < 2 {
        return Err(ZeroShotError::TooFewPerturbations(k));
    }
    if items.iter().any(|(_, c)| c.is_empty()) {
        return Err(ZeroShotError::EmptyInput);
    }
    backend
        .evaluate_batch(items, k, seed)?
        .iter()
        .map(curvature_from)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFit {
    pub threshold: f64,
    /// Macro-F1 at `threshold` on the fitting scores.
    pub macro_f1: f64,
    /// Set when the reversed rule (llm below the threshold) would do better.
    pub inverted_polarity: bool,
}

fn candidates(scores: &[f64]) -> Vec<f64> {
    let mut sorted: Vec<f64> = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let mut out = vec![sorted[0]];
    out.extend(sorted.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    out
}

fn best_threshold(scores: &[f64], golds: &[bool], llm_above: bool) -> (f64, f64) {
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for t in candidates(scores) {
        let preds: Vec<bool> = scores.iter().map(|&s| (s >= t) == llm_above).collect();
        let f = binary_macro_f1(&preds, golds);
        // ascending candidates: strict improvement keeps the smaller one
        if f > best.1 {
            best = (t, f);
        }
    }
    best
}

/// Threshold maximizing macro-F1 of "llm iff score >= t" over the minimum
/// score and the midpoints between consecutive distinct scores. Ties go
/// to the smaller threshold.
pub fn fit_threshold(scores: &[f64], golds_llm: &[bool]) -> Result<ThresholdFit, ZeroShotError> {
    if scores.len() != golds_llm.len() {
        return Err(ZeroShotError::LengthMismatch(scores.len(), golds_llm.len()));
    }
    if !golds_llm.iter().any(|&g| g) {
        return Err(ZeroShotError::SingleClass("human"));
    }
    if golds_llm.iter().all(|&g| g) {
        return Err(ZeroShotError::SingleClass("llm"));
    }
    let (threshold, macro_f1) = best_threshold(scores, golds_llm, true);
    let (_, reversed) = best_threshold(scores, golds_llm, false);
    Ok(ThresholdFit {
        threshold,
        macro_f1,
        inverted_polarity: reversed > macro_f1,
    })
}

/// True (llm) iff the score reaches the threshold.
pub fn decide(score: f64, threshold: f64) -> bool {
    score >= threshold
}

pub fn classify_zero_shot(
    code: &str,
    backend: &dyn LikelihoodBackend,
    threshold: f64,
    k: usize,
    seed: u64,
) -> Result<bool, ZeroShotError> {
    Ok(decide(curvature_score(code, backend, k, seed)?, threshold))
}
