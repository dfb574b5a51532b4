use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ErrorKind, PipelineError, Stage};
use crate::corpus::{QaConfig, SplitAssignment};
use crate::eval::HoldOut;
use crate::labels::Task;
use crate::models::{GbdtConfig, ModelSpec};
use crate::stylometry::FeatureOptions;
use crate::zeroshot::{NgramConfig, DEFAULT_PERTURBATIONS};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSection {
    pub paths: Vec<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Protocol {
    #[default]
    InDomain,
    Ood {
        #[serde(default)]
        hold_out: HoldOut,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DegradationSection {
    pub enabled: bool,
    pub bins: usize,
}

impl Default for DegradationSection {
    fn default() -> Self {
        DegradationSection { enabled: true, bins: 10 }
    }
}

/// External scorer speaking the JSONL adapter protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessSpec {
    pub program: String,
    #[serde(default)]
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZeroShotSection {
    pub enabled: bool,
    pub perturbations: usize,
    pub ngram: NgramConfig,
    /// Replaces the n-gram backend when set.
    pub process: Option<ProcessSpec>,
}

impl Default for ZeroShotSection {
    fn default() -> Self {
        ZeroShotSection {
            enabled: false,
            perturbations: DEFAULT_PERTURBATIONS,
            ngram: NgramConfig::default(),
            process: None,
        }
    }
}

/// Declarative description of one pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub task: Task,
    pub out_dir: PathBuf,
    pub corpus: CorpusSection,
    pub qa: QaConfig,
    pub split: SplitAssignment,
    pub features: FeatureOptions,
    pub model: ModelSpec,
    pub protocol: Protocol,
    pub degradation: DegradationSection,
    pub zeroshot: ZeroShotSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            task: Task::Binary,
            out_dir: PathBuf::from("out"),
            corpus: CorpusSection::default(),
            qa: QaConfig::default(),
            split: SplitAssignment::default(),
            features: FeatureOptions::default(),
            model: ModelSpec::Gbdt(GbdtConfig::default()),
            protocol: Protocol::InDomain,
            degradation: DegradationSection::default(),
            zeroshot: ZeroShotSection::default(),
        }
    }
}

fn invalid(message: impl Into<String>) -> PipelineError {
    PipelineError::new(Stage::Config, ErrorKind::Validation, message)
}

/// Sets `dotted.key = raw` in a TOML tree. `raw` is read as a TOML value
/// when it parses as one and as a string otherwise.
pub fn apply_override(root: &mut toml::Table, key: &str, raw: &str) -> Result<(), PipelineError> {
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(invalid(format!("bad override key `{key}`")));
    }
    let value = match toml::from_str::<toml::Table>(&format!("v = {raw}")) {
        Ok(mut t) => t.remove("v").expect("parsed key"),
        Err(_) => toml::Value::String(raw.to_string()),
    };
    let mut table = root;
    for part in &parts[..parts.len() - 1] {
        let entry = table
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry
            .as_table_mut()
            .ok_or_else(|| invalid(format!("override `{key}`: `{part}` is not a table")))?;
    }
    table.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

impl RunConfig {
    /// Parses TOML text, applies `key=value` overrides, and resolves
    /// relative paths against `base`.
    pub fn from_toml(text: &str, overrides: &[(String, String)], base: Option<&Path>) -> Result<Self, PipelineError> {
        let mut table: toml::Table = toml::from_str(text).map_err(|e| invalid(format!("config: {e}")))?;
        for (k, v) in overrides {
            apply_override(&mut table, k, v)?;
        }
        if let Some(model) = table.get_mut("model").and_then(toml::Value::as_table_mut) {
            model
                .entry("kind")
                .or_insert_with(|| toml::Value::String("gbdt".into()));
        }
        let mut cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| invalid(format!("config: {e}")))?;
        if let Some(base) = base {
            cfg.resolve_paths(base);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path, overrides: &[(String, String)]) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            PipelineError::new(Stage::Config, ErrorKind::Io, format!("{}: {e}", path.display()))
        })?;
        Self::from_toml(&text, overrides, path.parent())
    }

    fn resolve_paths(&mut self, base: &Path) {
        for p in &mut self.corpus.paths {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if self.out_dir.is_relative() {
            self.out_dir = base.join(&self.out_dir);
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Checks everything that can be checked without touching the corpus
    /// contents.
    pub fn validate(&self) -> Result<(), PipelineError> {
        self.qa.validate().map_err(|e| invalid(e.to_string()))?;
        self.split.validate().map_err(|e| invalid(e.to_string()))?;
        self.model.validate().map_err(|e| invalid(e.to_string()))?;
        if !(0.0..=1.0).contains(&self.features.max_missing) {
            return Err(invalid(format!(
                "features.max_missing must be in [0, 1], got {}",
                self.features.max_missing
            )));
        }
        if self.degradation.bins == 0 {
            return Err(invalid("degradation.bins must be >= 1"));
        }
        if self.zeroshot.perturbations < 2 {
            return Err(invalid("zeroshot.perturbations must be >= 2"));
        }
        if let Protocol::Ood { hold_out } = &self.protocol {
            if hold_out.is_empty() {
                return Err(invalid("ood protocol needs at least one held-out value"));
            }
        }
        Ok(())
    }

    /// Validation plus the existence of every corpus path.
    pub fn validate_paths(&self) -> Result<(), PipelineError> {
        if self.corpus.paths.is_empty() {
            return Err(invalid("corpus.paths is empty"));
        }
        for p in &self.corpus.paths {
            if !p.is_file() {
                return Err(invalid(format!("corpus path {} does not exist", p.display())));
            }
        }
        Ok(())
    }

    /// Digest of everything that influences results. The output directory
    /// and path spellings are left out so that a copy of a run elsewhere
    /// shares the digest.
    pub fn digest(&self) -> String {
        let mut canonical = self.clone();
        canonical.out_dir = PathBuf::new();
        canonical.corpus.paths = canonical
            .corpus
            .paths
            .iter()
            .map(|p| PathBuf::from(p.file_name().unwrap_or_default()))
            .collect();
        let json = serde_json::to_string(&canonical).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// The split plan with the run seed.
    pub fn split_plan(&self) -> SplitAssignment {
        SplitAssignment {
            seed: self.seed,
            ..self.split.clone()
        }
    }

    pub fn model_spec(&self) -> ModelSpec {
        self.model.clone().with_seed(self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_reach_nested_keys() {
        let overrides = vec![
            ("qa.low_percentile".to_string(), "7".to_string()),
            ("model.trees".to_string(), "50".to_string()),
            ("task".to_string(), "ternary".to_string()),
        ];
        let cfg = RunConfig::from_toml("[model]\nkind = \"gbdt\"\n", &overrides, None).unwrap();
        assert_eq!(cfg.qa.low_percentile, 7);
        assert_eq!(cfg.task, Task::Ternary);
        match cfg.model {
            ModelSpec::Gbdt(g) => assert_eq!(g.trees, 50),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_toml("sed = 3\n", &[], None).is_err());
        assert!(RunConfig::from_toml("[qa]\nlow = 3\n", &[], None).is_err());
    }

    #[test]
    fn inverted_percentiles_fail_validation() {
        let cfg = RunConfig::from_toml("[qa]\nlow_percentile = 40\nhigh_percentile = 60\n", &[], None).unwrap();
        assert!(cfg.validate().is_ok());
        let cfg = RunConfig::from_toml("[qa]\nlow_percentile = 50\nhigh_percentile = 50\n", &[], None).unwrap();
        assert_eq!(cfg.validate().unwrap_err().kind, ErrorKind::Validation);
    }

    #[test]
    fn digest_ignores_out_dir() {
        let a = RunConfig::default();
        let b = RunConfig {
            out_dir: "elsewhere".into(),
            ..RunConfig::default()
        };
        assert_eq!(a.digest(), b.digest());
        let c = RunConfig { seed: 1, ..RunConfig::default() };
        assert_ne!(a.digest(), c.digest());
    }
}
