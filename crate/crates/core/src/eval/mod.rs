//! Metrics, grouped reports, out-of-domain protocols and the hybrid
//! degradation curve.

mod degradation;
mod metrics;
mod ood;
mod report;

use std::collections::HashMap;

pub use degradation::{
    average_ranks, bin_index, degradation_curve, spearman, DegradationBin, DegradationCurve, TREND_Z,
};
pub use metrics::{
    binary_macro_f1, class_metrics, macro_metrics, metrics_from_confusion, report_metrics,
    ClassMetrics, Confusion, Metrics,
};
pub use ood::{check_disjoint, ood_split, HoldOut, OodSplit};
pub use report::{
    breakdown, confusion_csv, render_rows, EvalReport, GroupKey, GroupRow, MetricRow,
    ProtocolMeta, LOW_SUPPORT, SINGLE_CLASS_NOTE,
};

use crate::corpus::CodeSample;
use crate::labels::LabelSpace;
use crate::models::PredictionRecord;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("length mismatch: {preds} predictions vs {golds} gold labels")]
    LengthMismatch { preds: usize, golds: usize },
    #[error("label index {0} outside the label space")]
    LabelOutOfRange(usize),
    #[error("nothing to evaluate")]
    Empty,
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("prediction for unknown sample `{0}`")]
    UnknownId(String),
    #[error("prediction for `{0}` has no gold label")]
    MissingGold(String),
    #[error("{0}")]
    Protocol(String),
    #[error("{0}")]
    Io(String),
}

/// Scores a predictions file. Gold labels come from the record, or from the
/// matching sample when the record has none. `samples` may be empty when no
/// grouping is requested.
pub fn evaluate_records(
    records: &[PredictionRecord],
    samples: &[CodeSample],
    label_space: &LabelSpace,
    group_keys: &[GroupKey],
    protocol: ProtocolMeta,
) -> Result<EvalReport, EvalError> {
    let by_id: HashMap<&str, &CodeSample> = samples.iter().map(|s| (s.id.as_str(), s)).collect();
    let index = |name: &str| {
        label_space
            .index_of(name)
            .ok_or_else(|| EvalError::UnknownLabel(name.to_string()))
    };
    let mut preds = Vec::with_capacity(records.len());
    let mut golds = Vec::with_capacity(records.len());
    let mut aligned = Vec::with_capacity(records.len());
    for r in records {
        let sample = by_id.get(r.id.as_str()).copied();
        let gold = match (&r.gold, sample) {
            (Some(g), _) => index(g)?,
            (None, Some(s)) => label_space
                .class_of(s)
                .ok_or_else(|| EvalError::MissingGold(r.id.clone()))?,
            (None, None) => return Err(EvalError::MissingGold(r.id.clone())),
        };
        preds.push(index(&r.pred)?);
        golds.push(gold);
        if !group_keys.is_empty() {
            aligned.push(sample.ok_or_else(|| EvalError::UnknownId(r.id.clone()))?);
        }
    }
    EvalReport::build(label_space, &preds, &golds, &aligned, group_keys, protocol)
}
