use codetect_core::explain::{gain_importance, permutation_importance, ExplainError, ImportanceMetric};
use codetect_core::models::{train_gbdt, train_linear, GbdtConfig, LinearConfig};
use codetect_core::stylometry::FeatureMatrix;
use codetect_core::LabelSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Balanced binary data where only `signal` carries the label; the other
/// columns are uniform noise. With `duplicate`, the signal column appears
/// twice.
fn fixture(n: usize, seed: u64, duplicate: bool) -> FeatureMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let label = i % 2;
        let signal = if label == 1 { rng.random_range(0.6..1.0) } else { rng.random_range(0.0..0.4) };
        let noise: f64 = rng.random_range(0.0..1.0);
        let mut row = vec![signal, noise, 7.0];
        if duplicate {
            row.push(signal);
        }
        rows.push(row);
        labels.push(label);
    }
    let mut names = vec!["signal".to_string(), "noise".into(), "constant".into()];
    if duplicate {
        names.push("signal_copy".into());
    }
    FeatureMatrix::from_dense(names, LabelSpace::binary(), rows, labels)
}

fn gbdt(trees: usize, depth: usize) -> GbdtConfig {
    GbdtConfig {
        trees,
        max_depth: depth,
        min_samples_leaf: 5,
        ..GbdtConfig::default()
    }
}

#[test]
fn stump_puts_all_gain_on_its_feature() {
    let m = fixture(200, 1, false);
    let model = train_gbdt(&m, &gbdt(1, 1)).unwrap();
    let report = gain_importance(&model).unwrap();
    assert_eq!(report.score("signal"), Some(1.0));
    assert_eq!(report.score("noise"), Some(0.0));
    assert_eq!(report.score("constant"), Some(0.0));
    assert!(report.total_gain.unwrap() > 0.0);
}

#[test]
fn gain_scores_are_a_distribution() {
    let m = fixture(300, 2, false);
    let model = train_gbdt(&m, &gbdt(50, 3)).unwrap();
    let report = gain_importance(&model).unwrap();
    let total: f64 = report.ranked.iter().map(|s| s.score).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert!(report.ranked.iter().all(|s| s.score >= 0.0));
    assert_eq!(report.ranked[0].feature, "signal");
}

#[test]
fn duplicated_column_shares_importance() {
    let single = fixture(400, 3, false);
    let doubled = fixture(400, 3, true);
    let a = gain_importance(&train_gbdt(&single, &gbdt(30, 2)).unwrap()).unwrap();
    let b = gain_importance(&train_gbdt(&doubled, &gbdt(30, 2)).unwrap()).unwrap();
    let pair = b.score("signal").unwrap() + b.score("signal_copy").unwrap();
    let original = a.score("signal").unwrap();
    assert!((pair - original).abs() < 0.05, "pair {pair} vs original {original}");
}

#[test]
fn linear_model_asks_for_permutation() {
    let m = fixture(100, 4, false);
    let model = train_linear(&m, &LinearConfig::default()).unwrap();
    let err = gain_importance(&model).unwrap_err();
    assert!(matches!(err, ExplainError::UsePermutation));
    assert!(err.to_string().contains("use permutation"));
    assert!(permutation_importance(&model, &m, ImportanceMetric::Accuracy, 3, 0).is_ok());
}

#[test]
fn constant_and_unused_features_score_exactly_zero() {
    let m = fixture(300, 5, false);
    let model = train_gbdt(&m, &gbdt(1, 1)).unwrap();
    let gains = gain_importance(&model).unwrap();
    let perm = permutation_importance(&model, &m, ImportanceMetric::MacroF1, 5, 9).unwrap();
    assert_eq!(perm.score("constant"), Some(0.0));
    for s in &gains.ranked {
        if s.score == 0.0 {
            assert_eq!(perm.score(&s.feature), Some(0.0), "{}", s.feature);
        }
    }
}

#[test]
fn only_feature_importance_is_metric_minus_chance() {
    // balanced classes: a shuffled signal leaves predictions independent of
    // the labels, so expected accuracy is 1/2
    let m = fixture(1000, 6, false);
    let model = train_gbdt(&m, &gbdt(20, 2)).unwrap();
    let report = permutation_importance(&model, &m, ImportanceMetric::Accuracy, 20, 11).unwrap();
    let baseline = report.baseline.unwrap();
    assert!(baseline > 0.99);
    let expected = baseline - 0.5;
    let got = report.score("signal").unwrap();
    assert!((got - expected).abs() < 0.03, "{got} vs {expected}");
}

#[test]
fn more_repeats_lower_the_variance() {
    let m = fixture(200, 7, false);
    let model = train_gbdt(&m, &gbdt(20, 2)).unwrap();
    let variance = |repeats: usize| {
        let scores: Vec<f64> = (0..10)
            .map(|seed| {
                permutation_importance(&model, &m, ImportanceMetric::Accuracy, repeats, seed)
                    .unwrap()
                    .score("signal")
                    .unwrap()
            })
            .collect();
        let mean = scores.iter().sum::<f64>() / scores.len() as f64;
        scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / scores.len() as f64
    };
    assert!(variance(5) < variance(1));
}

#[test]
fn reports_are_deterministic_under_seed() {
    let m = fixture(200, 8, false);
    let model = train_gbdt(&m, &gbdt(10, 2)).unwrap();
    let a = permutation_importance(&model, &m, ImportanceMetric::MacroF1, 5, 3).unwrap();
    let b = permutation_importance(&model, &m, ImportanceMetric::MacroF1, 5, 3).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(matches!(
        permutation_importance(&model, &m, ImportanceMetric::MacroF1, 0, 3),
        Err(ExplainError::NoRepeats)
    ));
    assert!(a.to_csv().starts_with("feature,score\nsignal,"));
}
