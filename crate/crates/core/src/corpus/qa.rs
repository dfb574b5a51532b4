use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::comments::{self, strip_code};
use super::sample::CodeSample;
use super::tokens::count_tokens;
use super::CorpusError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QaConfig {
    pub low_percentile: u32,
    pub high_percentile: u32,
    pub per_language: bool,
    pub dedup: bool,
}

impl Default for QaConfig {
    fn default() -> Self {
        QaConfig {
            low_percentile: 5,
            high_percentile: 95,
            per_language: true,
            dedup: true,
        }
    }
}

impl QaConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        let bad = |reason: String| Err(CorpusError::InvalidConfig(reason));
        if self.low_percentile > 50 {
            return bad(format!(
                "low_percentile must be in [0, 50], got {}",
                self.low_percentile
            ));
        }
        if self.high_percentile <= 50 || self.high_percentile > 100 {
            return bad(format!(
                "high_percentile must be in (50, 100], got {}",
                self.high_percentile
            ));
        }
        if self.low_percentile >= self.high_percentile {
            return bad(format!(
                "low_percentile ({}) must be below high_percentile ({})",
                self.low_percentile, self.high_percentile
            ));
        }
        Ok(())
    }
}

/// Nearest-rank percentile: the `ceil(p/100 * N)`-th smallest value, with
/// rank 0 clamped to the minimum. `sorted` must be ascending and non-empty.
pub fn nearest_rank(sorted: &[usize], percentile: u32) -> usize {
    assert!(!sorted.is_empty(), "nearest_rank on empty slice");
    let n = sorted.len() as u64;
    let rank = (u64::from(percentile) * n).div_ceil(100).max(1);
    sorted[(rank - 1) as usize]
}

/// Token-count bounds applied to one language group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PercentileCut {
    pub low: usize,
    pub high: usize,
    pub group_size: usize,
}

pub struct LengthFiltered {
    pub kept: Vec<CodeSample>,
    pub cuts: BTreeMap<String, PercentileCut>,
}

fn group_key(sample: &CodeSample, per_language: bool) -> String {
    if per_language {
        sample.language.as_str().to_string()
    } else {
        "*".to_string()
    }
}

/// Drops samples whose token count lies strictly outside the nearest-rank
/// percentile band of their language group. Order is preserved.
pub fn filter_by_length(
    samples: Vec<CodeSample>,
    cfg: &QaConfig,
) -> Result<Vec<CodeSample>, CorpusError> {
    filter_by_length_with_cuts(samples, cfg).map(|f| f.kept)
}

pub fn filter_by_length_with_cuts(
    samples: Vec<CodeSample>,
    cfg: &QaConfig,
) -> Result<LengthFiltered, CorpusError> {
    cfg.validate()?;
    if samples.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let counts: Vec<usize> = samples
        .par_iter()
        .map(|s| count_tokens(&s.code, &s.language))
        .collect();

    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (sample, &count) in samples.iter().zip(&counts) {
        groups
            .entry(group_key(sample, cfg.per_language))
            .or_default()
            .push(count);
    }
    let cuts: BTreeMap<String, PercentileCut> = groups
        .into_iter()
        .map(|(key, mut values)| {
            values.sort_unstable();
            let cut = PercentileCut {
                low: nearest_rank(&values, cfg.low_percentile),
                high: nearest_rank(&values, cfg.high_percentile),
                group_size: values.len(),
            };
            (key, cut)
        })
        .collect();

    let kept = samples
        .into_iter()
        .zip(counts)
        .filter(|(sample, count)| {
            let cut = &cuts[&group_key(sample, cfg.per_language)];
            *count >= cut.low && *count <= cut.high
        })
        .map(|(sample, _)| sample)
        .collect();
    Ok(LengthFiltered { kept, cuts })
}

/// Dedup key: comment-stripped code with trailing whitespace removed per
/// line, runs of blank lines collapsed to one, and leading/trailing blank
/// lines dropped.
pub fn normalize_for_dedup(sample: &CodeSample) -> String {
    let stripped = strip_code(&sample.code, &sample.language).unwrap_or_else(|_| sample.code.clone());
    let mut out: Vec<&str> = Vec::new();
    let mut prev_blank = true;
    for line in stripped.lines() {
        let line = line.trim_end();
        if line.is_empty() {
            if !prev_blank {
                out.push("");
            }
            prev_blank = true;
        } else {
            out.push(line);
            prev_blank = false;
        }
    }
    while out.last() == Some(&"") {
        out.pop();
    }
    out.join("\n")
}

/// Keeps the first sample of every normalized-code equivalence class.
pub fn deduplicate(samples: Vec<CodeSample>) -> Vec<CodeSample> {
    let keys: Vec<String> = samples.par_iter().map(normalize_for_dedup).collect();
    let mut seen = HashSet::with_capacity(keys.len());
    samples
        .into_iter()
        .zip(keys)
        .filter_map(|(sample, key)| seen.insert(key).then_some(sample))
        .collect()
}

/// Counts produced by [`run_qa`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QaReport {
    pub ingested: usize,
    /// Samples whose code changed when comments were removed.
    pub comment_stripped: usize,
    /// Samples removed by the length filter.
    pub length_filtered: usize,
    /// Samples removed as duplicates.
    pub deduplicated: usize,
    /// Samples that were empty after comment removal.
    pub dropped_unparsable: usize,
    /// Samples passed through without comment removal.
    pub unsupported_language: usize,
    pub percentile_cuts: BTreeMap<String, PercentileCut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub small_strata: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_digest: Option<String>,
}

/// Comment stripping, empty-sample removal, length filtering and
/// deduplication, in that order.
pub fn run_qa(
    samples: Vec<CodeSample>,
    cfg: &QaConfig,
) -> Result<(Vec<CodeSample>, QaReport), CorpusError> {
    cfg.validate()?;
    let mut report = QaReport {
        ingested: samples.len(),
        ..QaReport::default()
    };
    if samples.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }

    let stripped: Vec<(CodeSample, bool, bool)> = samples
        .into_par_iter()
        .map(|mut sample| {
            if !comments::supports(&sample.language) {
                return (sample, false, true);
            }
            let code = strip_code(&sample.code, &sample.language)
                .expect("supported language has a grammar");
            let changed = code != sample.code;
            sample.code = code;
            (sample, changed, false)
        })
        .collect();

    let mut kept = Vec::with_capacity(stripped.len());
    for (sample, changed, unsupported) in stripped {
        report.comment_stripped += usize::from(changed);
        report.unsupported_language += usize::from(unsupported);
        if sample.code.trim().is_empty() {
            report.dropped_unparsable += 1;
        } else {
            kept.push(sample);
        }
    }
    if kept.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }

    let before = kept.len();
    let filtered = filter_by_length_with_cuts(kept, cfg)?;
    report.length_filtered = before - filtered.kept.len();
    report.percentile_cuts = filtered.cuts;

    let mut out = filtered.kept;
    if cfg.dedup {
        let before = out.len();
        out = deduplicate(out);
        report.deduplicated = before - out.len();
    }
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::sample::{Label, Language, Source};

    fn sample(id: &str, code: &str) -> CodeSample {
        CodeSample {
            id: id.into(),
            code: code.into(),
            language: Language::Python,
            source: Source::GitHub,
            label: Label::Human,
            generator: None,
            split: None,
            human_fraction: None,
        }
    }

    fn with_tokens(id: usize, n: usize) -> CodeSample {
        sample(&id.to_string(), &vec!["a"; n].join(" "))
    }

    #[test]
    fn nearest_rank_on_one_to_twenty() {
        let values: Vec<usize> = (1..=20).collect();
        assert_eq!(nearest_rank(&values, 5), 1);
        assert_eq!(nearest_rank(&values, 95), 19);
        assert_eq!(nearest_rank(&values, 0), 1);
        assert_eq!(nearest_rank(&values, 100), 20);
    }

    #[test]
    fn drops_only_the_longest_of_twenty() {
        let samples: Vec<_> = (1..=20).map(|n| with_tokens(n, n)).collect();
        let kept = filter_by_length(samples, &QaConfig::default()).unwrap();
        assert_eq!(kept.len(), 19);
        assert!(kept.iter().all(|s| s.id != "20"));
        // order preserved
        let ids: Vec<usize> = kept.iter().map(|s| s.id.parse().unwrap()).collect();
        assert_eq!(ids, (1..=19).collect::<Vec<_>>());
    }

    #[test]
    fn identical_lengths_keep_everything() {
        let samples: Vec<_> = (0..10).map(|i| with_tokens(i, 7)).collect();
        assert_eq!(filter_by_length(samples, &QaConfig::default()).unwrap().len(), 10);
    }

    #[test]
    fn identity_bounds() {
        let samples: Vec<_> = (1..=30).map(|n| with_tokens(n, n * 3 % 17 + 1)).collect();
        let cfg = QaConfig {
            low_percentile: 0,
            high_percentile: 100,
            ..QaConfig::default()
        };
        assert_eq!(filter_by_length(samples.clone(), &cfg).unwrap(), samples);
    }

    #[test]
    fn empty_corpus_errors() {
        let err = filter_by_length(Vec::new(), &QaConfig::default()).unwrap_err();
        assert_eq!(err.to_string(), "empty corpus");
    }

    #[test]
    fn inverted_bounds_rejected() {
        let cfg = QaConfig {
            low_percentile: 50,
            high_percentile: 50,
            ..QaConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn dedup_byte_identical() {
        let out = deduplicate(vec![sample("a", "x = 1\n"), sample("b", "x = 1\n")]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].id, "a");
    }

    #[test]
    fn dedup_ignores_trailing_blank_lines_and_comments() {
        let out = deduplicate(vec![
            sample("a", "x = 1\n"),
            sample("b", "x = 1\n\n\n"),
            sample("c", "x = 1  # note\n"),
        ]);
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn dedup_keeps_different_identifiers() {
        let a = sample("a", "x = 1\n");
        let b = sample("b", "y = 1\n");
        assert_ne!(normalize_for_dedup(&a), normalize_for_dedup(&b));
        assert_eq!(deduplicate(vec![a, b]).len(), 2);
    }

    #[test]
    fn qa_report_counts() {
        let samples = vec![
            sample("a", "x = 1  # c\n"),
            sample("b", "# only a comment\n"),
            sample("c", "x = 1\n"),
            sample("d", "y = 2\n"),
        ];
        let (kept, report) = run_qa(samples, &QaConfig::default()).unwrap();
        assert_eq!(report.ingested, 4);
        assert_eq!(report.comment_stripped, 2);
        assert_eq!(report.dropped_unparsable, 1);
        assert_eq!(report.deduplicated, 1);
        assert_eq!(kept.len(), 2);
        assert_eq!(report.percentile_cuts["python"].low, 3);
    }
}
