use indexmap::IndexMap;
use serde::Serialize;

use super::{ErrorKind, PipelineError, Stage, StageResult};
use crate::corpus::{self, Language};
use crate::labels::LabelSpace;
use crate::models::TrainedModel;
use crate::stylometry::{FeatureOptions, Stylometer, TreeSitterBackend};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SinglePrediction {
    pub label: String,
    pub scores: IndexMap<String, f64>,
    /// False when the code did not parse and only text features were used.
    pub parsed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Languages with both a grammar and a comment stripper.
pub fn supported_languages() -> Vec<&'static str> {
    Language::KNOWN
        .iter()
        .filter(|l| TreeSitterBackend::grammar(l).is_some() && corpus::has_comment_grammar(l))
        .map(|l| match l {
            Language::Python => "python",
            Language::Java => "java",
            Language::Cpp => "cpp",
            _ => unreachable!("only grammar-backed languages pass the filter"),
        })
        .collect()
}

/// Classifies one snippet with a trained model, applying the same comment
/// stripping and feature extraction as training.
pub fn predict_single(
    model: &TrainedModel<f64>,
    code: &str,
    language: &str,
    options: &FeatureOptions,
) -> Result<SinglePrediction, PipelineError> {
    let invalid = |msg: String| PipelineError::new(Stage::Predict, ErrorKind::Validation, msg);
    if code.trim().is_empty() {
        return Err(invalid("empty input".into()));
    }
    let lang: Language = language.parse().unwrap_or_else(|e| match e {});
    let supported = supported_languages();
    if !supported.contains(&lang.as_str()) {
        return Err(invalid(format!(
            "unsupported language `{language}`; supported: {}",
            supported.join(", ")
        )));
    }
    let schema = model.feature_schema.as_ref().ok_or_else(|| {
        PipelineError::new(
            Stage::Predict,
            ErrorKind::Stage,
            "model carries no feature schema; retrain with this version",
        )
    })?;

    let stripped = corpus::strip_code(code, &lang).at(Stage::Predict)?;
    if stripped.trim().is_empty() {
        return Err(invalid("empty input after comment removal".into()));
    }
    let stylometer = Stylometer::new(&TreeSitterBackend, options.clone());
    let parsed = stylometer.summarize(&stripped, &lang).is_ok();
    let mut warnings = Vec::new();
    if !parsed {
        let msg = "code did not parse; using text features only".to_string();
        log::warn!("{msg}");
        warnings.push(msg);
    }
    let fv = stylometer.extract_code::<f64>("input", &stripped, &lang);
    let space: &LabelSpace = &model.label_space;
    let matrix = schema.apply(&[&fv], &[0], space);
    let p = model.predict_row(&matrix.rows[0]);
    Ok(SinglePrediction {
        label: space.name(p.label).to_string(),
        scores: (0..space.len()).map(|i| (space.name(i).to_string(), p.scores[i])).collect(),
        parsed,
        warnings,
    })
}
