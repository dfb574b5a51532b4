use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::corpus::{CodeSample, Split};

/// Values withheld from training. Empty sets leave their axis alone.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HoldOut {
    pub generator: BTreeSet<String>,
    pub source: BTreeSet<String>,
    pub language: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    Generator,
    Source,
    Language,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::Generator => "generator",
            Axis::Source => "source",
            Axis::Language => "language",
        }
    }

    fn value(self, s: &CodeSample) -> Option<String> {
        match self {
            Axis::Generator => s.generator.as_ref().map(|g| g.as_str().to_string()),
            Axis::Source => Some(s.source.as_str().to_string()),
            Axis::Language => Some(s.language.as_str().to_string()),
        }
    }
}

impl HoldOut {
    pub fn is_empty(&self) -> bool {
        self.generator.is_empty() && self.source.is_empty() && self.language.is_empty()
    }

    fn axes(&self) -> Vec<(Axis, &BTreeSet<String>)> {
        [
            (Axis::Generator, &self.generator),
            (Axis::Source, &self.source),
            (Axis::Language, &self.language),
        ]
        .into_iter()
        .filter(|(_, set)| !set.is_empty())
        .collect()
    }

    /// True when the sample carries a held-out value on any axis.
    pub fn touches(&self, s: &CodeSample) -> bool {
        self.axes()
            .iter()
            .any(|(axis, set)| axis.value(s).is_some_and(|v| set.contains(&v)))
    }

    /// True when the sample carries a held-out value on every held-out axis.
    pub fn selects(&self, s: &CodeSample) -> bool {
        let axes = self.axes();
        !axes.is_empty()
            && axes
                .iter()
                .all(|(axis, set)| axis.value(s).is_some_and(|v| set.contains(&v)))
    }

    pub fn describe(&self) -> Vec<String> {
        self.axes()
            .iter()
            .map(|(axis, set)| {
                let values: Vec<&str> = set.iter().map(String::as_str).collect();
                format!("hold out {}: {}", axis.name(), values.join(", "))
            })
            .collect()
    }
}

/// Sample indices for one out-of-domain run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OodSplit {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Train on the training split minus anything that touches a held-out
/// value; test on every sample (any split) that matches all held-out axes.
/// Disjointness of train and test values is checked, not assumed.
pub fn ood_split(samples: &[CodeSample], hold_out: &HoldOut) -> Result<OodSplit, EvalError> {
    if hold_out.is_empty() {
        return Err(EvalError::Protocol("hold-out names no values".into()));
    }
    for (axis, set) in hold_out.axes() {
        let present: BTreeSet<String> = samples.iter().filter_map(|s| axis.value(s)).collect();
        if let Some(missing) = set.iter().find(|v| !present.contains(*v)) {
            return Err(EvalError::Protocol(format!(
                "held-out {} `{missing}` does not occur in the corpus",
                axis.name()
            )));
        }
    }
    let train: Vec<usize> = (0..samples.len())
        .filter(|&i| samples[i].split.unwrap_or(Split::Train) == Split::Train && !hold_out.touches(&samples[i]))
        .collect();
    let test: Vec<usize> = (0..samples.len()).filter(|&i| hold_out.selects(&samples[i])).collect();
    if train.is_empty() {
        return Err(EvalError::Protocol("empty training set after hold-out".into()));
    }
    if test.is_empty() {
        return Err(EvalError::Protocol("no test samples match the hold-out".into()));
    }
    check_disjoint(samples, &train, &test, hold_out)?;
    Ok(OodSplit { train, test })
}

pub fn check_disjoint(
    samples: &[CodeSample],
    train: &[usize],
    test: &[usize],
    hold_out: &HoldOut,
) -> Result<(), EvalError> {
    for (axis, _) in hold_out.axes() {
        let values = |idx: &[usize]| -> BTreeSet<String> {
            idx.iter().filter_map(|&i| axis.value(&samples[i])).collect()
        };
        let overlap: Vec<String> = values(train).intersection(&values(test)).cloned().collect();
        if !overlap.is_empty() {
            return Err(EvalError::Protocol(format!(
                "{} values shared by train and test: {}",
                axis.name(),
                overlap.join(", ")
            )));
        }
    }
    Ok(())
}
