use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::sample::{CodeSample, Split};
use super::CorpusError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StratifyKey {
    Label,
    Language,
    Source,
    Generator,
}

impl StratifyKey {
    fn value<'a>(&self, sample: &'a CodeSample) -> &'a str {
        match self {
            StratifyKey::Label => sample.label.as_str(),
            StratifyKey::Language => sample.language.as_str(),
            StratifyKey::Source => sample.source.as_str(),
            StratifyKey::Generator => sample.generator.as_ref().map_or("-", |g| g.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitAssignment {
    /// Train / val / test proportions.
    pub ratios: [f64; 3],
    pub stratify_keys: Vec<StratifyKey>,
    pub seed: u64,
}

impl Default for SplitAssignment {
    fn default() -> Self {
        SplitAssignment {
            ratios: [0.8, 0.1, 0.1],
            stratify_keys: vec![StratifyKey::Label, StratifyKey::Language, StratifyKey::Source],
            seed: 0,
        }
    }
}

impl SplitAssignment {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.ratios.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(CorpusError::InvalidConfig(format!(
                "split ratios must be non-negative, got {:?}",
                self.ratios
            )));
        }
        let total: f64 = self.ratios.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(CorpusError::InvalidConfig(format!(
                "split ratios must sum to 1, got {total}"
            )));
        }
        Ok(())
    }

    pub fn stratum_key(&self, sample: &CodeSample) -> String {
        self.stratify_keys
            .iter()
            .map(|k| k.value(sample))
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// Largest-remainder allocation of `n` items to the three splits. Remainder
/// ties go to the earlier split (train, then val, then test).
pub fn allocate(n: usize, ratios: [f64; 3]) -> [usize; 3] {
    let quotas = ratios.map(|r| r * n as f64);
    let mut counts = quotas.map(|q| q.floor() as usize);
    let assigned: usize = counts.iter().sum();
    let mut order = [0usize, 1, 2];
    // stable sort keeps split order among equal remainders
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).unwrap_or(std::cmp::Ordering::Equal)
    });
    for &idx in order.iter().take(n.saturating_sub(assigned)) {
        counts[idx] += 1;
    }
    counts
}

fn stratum_seed(seed: u64, key: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(key.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

pub struct SplitOutcome {
    pub samples: Vec<CodeSample>,
    /// Strata with fewer than three samples; all of their members went to
    /// train.
    pub small_strata: Vec<String>,
}

/// Assigns every sample to exactly one split, stratified by the plan's keys.
/// Output keeps input order; only the `split` field changes.
pub fn assign_splits(
    mut samples: Vec<CodeSample>,
    plan: &SplitAssignment,
) -> Result<SplitOutcome, CorpusError> {
    plan.validate()?;
    let mut strata: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (idx, sample) in samples.iter().enumerate() {
        strata.entry(plan.stratum_key(sample)).or_default().push(idx);
    }

    let mut small_strata = Vec::new();
    for (key, mut members) in strata {
        if members.len() < 3 {
            for &idx in &members {
                samples[idx].split = Some(Split::Train);
            }
            small_strata.push(key);
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(stratum_seed(plan.seed, &key));
        members.shuffle(&mut rng);
        let [n_train, n_val, _] = allocate(members.len(), plan.ratios);
        for (pos, &idx) in members.iter().enumerate() {
            let split = if pos < n_train {
                Split::Train
            } else if pos < n_train + n_val {
                Split::Val
            } else {
                Split::Test
            };
            samples[idx].split = Some(split);
        }
    }
    Ok(SplitOutcome {
        samples,
        small_strata,
    })
}
