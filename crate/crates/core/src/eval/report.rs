use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::metrics::{report_metrics, Confusion, Metrics};
use super::ood::HoldOut;
use super::EvalError;
use crate::corpus::CodeSample;
use crate::labels::{LabelSpace, Task};

/// Groups smaller than this are flagged.
pub const LOW_SUPPORT: usize = 10;

pub const SINGLE_CLASS_NOTE: &str = "single-class gold";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MetricRow {
    pub fn from_confusion(c: &Confusion) -> Self {
        let (m, single): (Metrics<f64>, bool) = report_metrics(c);
        MetricRow {
            precision: m.precision,
            recall: m.recall,
            f1: m.f1,
            accuracy: m.accuracy,
            n: c.total() as usize,
            note: single.then(|| SINGLE_CLASS_NOTE.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupRow {
    #[serde(flatten)]
    pub metrics: MetricRow,
    pub low_support: bool,
    pub confusion: Confusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKey {
    Language,
    Source,
    Generator,
}

impl GroupKey {
    pub const ALL: [GroupKey; 3] = [GroupKey::Language, GroupKey::Source, GroupKey::Generator];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupKey::Language => "language",
            GroupKey::Source => "source",
            GroupKey::Generator => "generator",
        }
    }

    /// Group value of a sample; human code groups under `human`.
    pub fn value(self, sample: &CodeSample) -> String {
        match self {
            GroupKey::Language => sample.language.as_str().to_string(),
            GroupKey::Source => sample.source.as_str().to_string(),
            GroupKey::Generator => sample
                .generator
                .as_ref()
                .map_or_else(|| "human".to_string(), |g| g.as_str().to_string()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProtocolMeta {
    /// `in-domain`, `ood`, `hybrid` or `predictions`.
    pub protocol: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hold_out: Option<HoldOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub filters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub task: Task,
    pub classes: Vec<String>,
    pub overall: MetricRow,
    pub confusion: Confusion,
    /// Group key, then group value.
    #[serde(default)]
    pub groups: BTreeMap<GroupKey, BTreeMap<String, GroupRow>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub protocol: ProtocolMeta,
}

/// Metrics within each group of `key`. `samples[i]` belongs to
/// `preds[i]` and `golds[i]`.
pub fn breakdown(
    preds: &[usize],
    golds: &[usize],
    samples: &[&CodeSample],
    key: GroupKey,
    n_classes: usize,
) -> Result<BTreeMap<String, GroupRow>, EvalError> {
    if samples.len() != preds.len() || golds.len() != preds.len() {
        return Err(EvalError::LengthMismatch {
            preds: preds.len(),
            golds: golds.len().min(samples.len()),
        });
    }
    let mut confusions: BTreeMap<String, Confusion> = BTreeMap::new();
    for ((&p, &g), s) in preds.iter().zip(golds).zip(samples) {
        let c = confusions
            .entry(key.value(s))
            .or_insert_with(|| Confusion::new(n_classes));
        if p >= n_classes || g >= n_classes {
            return Err(EvalError::LabelOutOfRange(p.max(g)));
        }
        c.counts[g][p] += 1;
    }
    Ok(confusions
        .into_iter()
        .map(|(value, confusion)| {
            let metrics = MetricRow::from_confusion(&confusion);
            let low_support = metrics.n < LOW_SUPPORT;
            (
                value,
                GroupRow {
                    metrics,
                    low_support,
                    confusion,
                },
            )
        })
        .collect())
}

impl EvalReport {
    pub fn build(
        label_space: &LabelSpace,
        preds: &[usize],
        golds: &[usize],
        samples: &[&CodeSample],
        group_keys: &[GroupKey],
        protocol: ProtocolMeta,
    ) -> Result<Self, EvalError> {
        if golds.is_empty() {
            return Err(EvalError::Empty);
        }
        let confusion = Confusion::from_pairs(preds, golds, label_space.len())?;
        let overall = MetricRow::from_confusion(&confusion);
        let mut notes = Vec::new();
        if let Some(note) = &overall.note {
            notes.push(format!("{note}: precision omitted"));
        }
        let mut groups = BTreeMap::new();
        for &key in group_keys {
            groups.insert(key, breakdown(preds, golds, samples, key, label_space.len())?);
        }
        Ok(EvalReport {
            task: label_space.task,
            classes: label_space.classes.clone(),
            overall,
            confusion,
            groups,
            notes,
            protocol,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn save(&self, path: &Path) -> Result<(), EvalError> {
        std::fs::write(path, self.to_json()).map_err(|e| EvalError::Io(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self, EvalError> {
        let text = std::fs::read_to_string(path).map_err(|e| EvalError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| EvalError::Io(format!("{}: {e}", path.display())))
    }

    /// Plain-text table, values in percent with two decimals.
    pub fn render(&self, title: &str) -> String {
        let mut rows = vec![(title.to_string(), self.overall.clone())];
        for (key, groups) in &self.groups {
            for (value, row) in groups {
                let mut label = format!("  {}={value}", key.as_str());
                if row.low_support {
                    label.push_str(" (low support)");
                }
                rows.push((label, row.metrics.clone()));
            }
        }
        render_rows(&rows)
    }

    pub fn confusion_csv(&self) -> String {
        confusion_csv(&self.confusion, &self.classes)
    }
}

fn pct(v: f64) -> String {
    format!("{:.2}", v * 100.0)
}

pub fn render_rows(rows: &[(String, MetricRow)]) -> String {
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(5);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}", "", "P", "R", "F", "A", "n");
    for (label, m) in rows {
        let p = m.precision.map_or_else(|| "-".to_string(), pct);
        let _ = writeln!(
            out,
            "{label:<width$}  {p:>6}  {:>6}  {:>6}  {:>6}  {:>6}",
            pct(m.recall),
            pct(m.f1),
            pct(m.accuracy),
            m.n
        );
    }
    out
}

/// Gold classes down, predictions across.
pub fn confusion_csv(c: &Confusion, classes: &[String]) -> String {
    let mut out = String::from("gold\\pred");
    for name in classes {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (name, row) in classes.iter().zip(&c.counts) {
        out.push_str(name);
        for v in row {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}
