use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::backend::GrammarBackend;
use super::maintainability::maintainability_index;
use super::summary::{summarize, AstSummary};
use super::StylometryError;
use crate::corpus::{CodeSample, Language};
use crate::scalar::Scalar;

pub const AVG_LINE_LENGTH: &str = "avg_line_length";
pub const MAX_DECISION_LENGTH: &str = "max_decision_length";
pub const FUNCTION_DENSITY: &str = "function_density";
pub const AVG_FUNCTION_LENGTH: &str = "avg_function_length";
pub const WHITESPACE_RATIO: &str = "whitespace_ratio";
pub const AVG_VAR_NAME_LENGTH: &str = "avg_var_name_length";
pub const MAINTAINABILITY_INDEX: &str = "maintainability_index";
pub const AST_DEPTH: &str = "ast_depth";
pub const ASSIGNMENT_COUNT: &str = "assignment_count";
pub const NODE_DENSITY_PREFIX: &str = "node_density/";

/// Features that only need the raw text.
pub const TEXT_FEATURES: &[&str] = &[AVG_LINE_LENGTH, WHITESPACE_RATIO];

/// Features that need a successful parse.
pub const AST_FEATURES: &[&str] = &[
    MAX_DECISION_LENGTH,
    FUNCTION_DENSITY,
    AVG_FUNCTION_LENGTH,
    AVG_VAR_NAME_LENGTH,
    MAINTAINABILITY_INDEX,
    AST_DEPTH,
    ASSIGNMENT_COUNT,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeatureOptions {
    /// Keep node-type features per language (`node_density/python/if_statement`)
    /// instead of pooling equal kind names across grammars.
    pub namespace_node_types: bool,
    /// Largest tolerated missing fraction on the fitting split.
    pub max_missing: f64,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        FeatureOptions {
            namespace_node_types: true,
            max_missing: 0.2,
        }
    }
}

/// Named feature values of one sample. A key that is absent and a key
/// mapped to `None` both mean "missing".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<T> {
    pub sample_id: String,
    pub values: BTreeMap<String, Option<T>>,
    /// True when the AST features could be computed.
    pub parsed: bool,
}

impl<T: Scalar> FeatureVector<T> {
    pub fn get(&self, name: &str) -> Option<T> {
        self.values.get(name).copied().flatten()
    }

    fn set(&mut self, name: &str, value: Option<T>) {
        self.values.insert(name.to_string(), value);
    }
}

fn mean<T: Scalar>(values: impl IntoIterator<Item = usize>) -> Option<T> {
    let (sum, n) = values
        .into_iter()
        .fold((0usize, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| T::from_count(sum) / T::from_count(n))
}

fn ratio<T: Scalar>(num: usize, den: usize) -> Option<T> {
    (den > 0).then(|| T::from_count(num) / T::from_count(den))
}

/// Mean character count over non-blank lines.
pub fn avg_line_length<T: Scalar>(code: &str) -> Option<T> {
    mean(
        code.split('\n')
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.chars().count()),
    )
}

/// Whitespace characters over all characters.
pub fn whitespace_ratio<T: Scalar>(code: &str) -> Option<T> {
    let (ws, total) = code.chars().fold((0usize, 0usize), |(w, t), c| {
        (w + usize::from(c.is_whitespace()), t + 1)
    });
    ratio(ws, total)
}

pub fn node_feature_name(key: &str, namespaced: bool) -> String {
    if namespaced {
        format!("{NODE_DENSITY_PREFIX}{key}")
    } else {
        let kind = key.split_once('/').map_or(key, |(_, kind)| kind);
        format!("{NODE_DENSITY_PREFIX}{kind}")
    }
}

/// Builds the feature vector for one sample from its text and, when
/// available, its AST summary.
pub fn features_from_summary<T: Scalar>(
    sample_id: &str,
    code: &str,
    summary: Option<&AstSummary>,
    options: &FeatureOptions,
) -> FeatureVector<T> {
    let mut fv = FeatureVector {
        sample_id: sample_id.to_string(),
        values: BTreeMap::new(),
        parsed: summary.is_some(),
    };
    fv.set(AVG_LINE_LENGTH, avg_line_length(code));
    fv.set(WHITESPACE_RATIO, whitespace_ratio(code));

    let Some(ast) = summary else {
        for name in AST_FEATURES {
            fv.set(name, None);
        }
        return fv;
    };
    let loc = ast.lines_of_code;
    fv.set(
        MAX_DECISION_LENGTH,
        ast.decision_condition_lengths
            .iter()
            .max()
            .map(|&m| T::from_count(m)),
    );
    fv.set(FUNCTION_DENSITY, ratio(ast.function_spans.len(), loc));
    fv.set(
        AVG_FUNCTION_LENGTH,
        mean(ast.function_spans.iter().map(|(s, e)| e + 1 - s)),
    );
    fv.set(AVG_VAR_NAME_LENGTH, mean(ast.identifier_lengths.iter().copied()));
    fv.set(
        MAINTAINABILITY_INDEX,
        (loc > 0).then(|| maintainability_index(ast)),
    );
    fv.set(AST_DEPTH, Some(T::from_count(ast.max_depth)));
    fv.set(ASSIGNMENT_COUNT, Some(T::from_count(ast.assignment_count)));

    if loc > 0 {
        let mut densities: BTreeMap<String, usize> = BTreeMap::new();
        for (key, &count) in &ast.node_counts {
            *densities
                .entry(node_feature_name(key, options.namespace_node_types))
                .or_insert(0) += count;
        }
        for (name, count) in densities {
            fv.values.insert(name, ratio(count, loc));
        }
    }
    fv
}

/// Parses `code` and summarizes its AST.
pub fn parse(
    backend: &dyn GrammarBackend,
    code: &str,
    language: &Language,
) -> Result<AstSummary, StylometryError> {
    let tree = backend.parse(code, language)?;
    summarize(&tree, code, language)
        .ok_or_else(|| StylometryError::UnsupportedLanguage(language.as_str().to_string()))
}

/// Feature extraction bound to a grammar backend.
pub struct Stylometer<'a> {
    pub backend: &'a dyn GrammarBackend,
    pub options: FeatureOptions,
}

impl<'a> Stylometer<'a> {
    pub fn new(backend: &'a dyn GrammarBackend, options: FeatureOptions) -> Self {
        Stylometer { backend, options }
    }

    pub fn summarize(&self, code: &str, language: &Language) -> Result<AstSummary, StylometryError> {
        parse(self.backend, code, language)
    }

    /// Extracts features. Unparsable code yields only the text features,
    /// with every AST feature marked missing.
    pub fn extract<T: Scalar>(&self, sample: &CodeSample) -> FeatureVector<T> {
        self.extract_code(&sample.id, &sample.code, &sample.language)
    }

    pub fn extract_code<T: Scalar>(
        &self,
        id: &str,
        code: &str,
        language: &Language,
    ) -> FeatureVector<T> {
        let summary = self.summarize(code, language).ok();
        features_from_summary(id, code, summary.as_ref(), &self.options)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stylometry::backend::TreeSitterBackend;

    fn extract(code: &str, language: Language) -> FeatureVector<f64> {
        Stylometer::new(&TreeSitterBackend, FeatureOptions::default()).extract_code("t", code, &language)
    }

    #[test]
    fn whitespace_ratio_of_a_b() {
        let fv = extract("a b", Language::Python);
        assert_eq!(fv.get(WHITESPACE_RATIO), Some(1.0 / 3.0));
    }

    #[test]
    fn function_density_two_per_ten() {
        let code = "def f():\n    a = 1\n    b = 2\n    return a\ndef g():\n    c = 3\n    d = 4\n    e = 5\n    return c\nf()\n";
        let fv = extract(code, Language::Python);
        assert_eq!(fv.get(FUNCTION_DENSITY), Some(0.2));
        assert_eq!(fv.get(AVG_FUNCTION_LENGTH), Some(4.5));
    }

    #[test]
    fn missing_versus_zero() {
        let fv = extract("print(1)\n", Language::Python);
        assert_eq!(fv.get(ASSIGNMENT_COUNT), Some(0.0));
        assert_eq!(fv.get(AVG_FUNCTION_LENGTH), None);
        assert_eq!(fv.get(MAX_DECISION_LENGTH), None);
        assert_eq!(fv.get(AVG_VAR_NAME_LENGTH), None);
        assert_eq!(fv.get(FUNCTION_DENSITY), Some(0.0));
    }

    #[test]
    fn unparsable_keeps_text_features() {
        let fv = extract("}}}} ))) class ((( {{{{ ;;; ]]] def", Language::Python);
        assert!(!fv.parsed);
        assert!(fv.get(AVG_LINE_LENGTH).is_some());
        assert!(fv.get(WHITESPACE_RATIO).is_some());
        for name in AST_FEATURES {
            assert_eq!(fv.values.get(*name), Some(&None), "{name}");
        }
    }

    #[test]
    fn node_densities_namespaced_and_pooled() {
        let fv = extract("x = 1\n", Language::Python);
        assert_eq!(fv.get("node_density/python/assignment"), Some(1.0));
        let pooled = Stylometer::new(
            &TreeSitterBackend,
            FeatureOptions {
                namespace_node_types: false,
                ..FeatureOptions::default()
            },
        )
        .extract_code::<f64>("t", "x = 1\n", &Language::Python);
        assert_eq!(pooled.get("node_density/assignment"), Some(1.0));
    }

    #[test]
    fn f32_extraction() {
        let fv: FeatureVector<f32> =
            Stylometer::new(&TreeSitterBackend, FeatureOptions::default()).extract_code("t", "a b", &Language::Python);
        assert_eq!(fv.get(WHITESPACE_RATIO), Some(1.0f32 / 3.0));
    }
}
