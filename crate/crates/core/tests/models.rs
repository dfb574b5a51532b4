mod common;

use codetect_core::models::{
    self, load, save, train_gbdt, train_linear, GbdtConfig, LinearConfig, ModelError, ModelParams,
    TreeNode,
};
use codetect_core::stylometry::FeatureMatrix;
use codetect_core::LabelSpace;
use common::{blobs, names, xor};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn accuracy(model: &models::TrainedModel<f64>, m: &FeatureMatrix<f64>) -> f64 {
    let preds = model.predict(m).unwrap();
    preds.iter().zip(&m.labels).filter(|(p, &g)| p.label == g).count() as f64 / m.n_rows() as f64
}

fn small_gbdt(trees: usize) -> GbdtConfig {
    GbdtConfig {
        trees,
        min_samples_leaf: 5,
        ..GbdtConfig::default()
    }
}

#[test]
fn linear_separates_blobs() {
    let m = blobs(200, 1);
    let model = train_linear(&m, &LinearConfig::default()).unwrap();
    assert!(accuracy(&model, &m) >= 0.99);
    let center = model.predict_row(&[2.0, 2.0]);
    assert_eq!(center.label, 1);
    assert!(center.scores[1] > 0.9, "{:?}", center.scores);
}

#[test]
fn linear_rff_separates_blobs() {
    let m = blobs(200, 2);
    let cfg = LinearConfig {
        rff_dims: Some(128),
        ..LinearConfig::default()
    };
    let model = train_linear(&m, &cfg).unwrap();
    assert!(accuracy(&model, &m) >= 0.99);
}

#[test]
fn zero_features_predict_majority() {
    let rows = vec![vec![0.0, 0.0]; 7];
    let labels = vec![1, 1, 0, 1, 0, 1, 1];
    let m = FeatureMatrix::from_dense(names(2), LabelSpace::binary(), rows, labels);
    let model = train_linear(&m, &LinearConfig::default()).unwrap();
    assert!(model.predict(&m).unwrap().iter().all(|p| p.label == 1));
    assert_eq!(model.metadata.constant_features, ["f0", "f1"]);
}

#[test]
fn single_class_is_degenerate() {
    let m = FeatureMatrix::from_dense(names(1), LabelSpace::binary(), vec![vec![1.0], vec![2.0]], vec![1, 1]);
    let err = train_gbdt(&m, &small_gbdt(1)).unwrap_err();
    assert!(matches!(err, ModelError::DegenerateLabels));
    assert!(err.to_string().contains("degenerate labels"));
    assert!(train_linear(&m, &LinearConfig::default()).is_err());
}

#[test]
fn gbdt_solves_xor() {
    let m = xor(400, 3);
    let model = train_gbdt(&m, &small_gbdt(100)).unwrap();
    assert!(accuracy(&model, &m) >= 0.99);
}

#[test]
fn gbdt_loss_is_non_increasing() {
    let m = xor(1000, 4);
    let cfg = GbdtConfig {
        trees: 300,
        ..GbdtConfig::default()
    };
    let model = train_gbdt(&m, &cfg).unwrap();
    let ModelParams::Gbdt(g) = &model.model else { unreachable!() };
    assert_eq!(g.loss_curve.len(), 301);
    assert!(g.loss_curve.windows(2).all(|w| w[1] <= w[0]));
}

/// Best stump by brute force: every feature, every cut between distinct
/// values, gain from the closed form at the base score.
fn best_stump(rows: &[Vec<f64>], labels: &[usize], min_leaf: usize) -> (usize, f64) {
    let n = labels.len() as f64;
    let pos = labels.iter().filter(|&&l| l == 1).count() as f64;
    let p = (pos + 1.0) / (n + 2.0);
    let g: Vec<f64> = labels.iter().map(|&l| p - l as f64).collect();
    let h = p * (1.0 - p);
    let score = |gs: f64, hs: f64| gs * gs / (hs + 1.0);
    let mut best = (usize::MAX, f64::NAN, f64::NEG_INFINITY);
    for j in 0..rows[0].len() {
        let mut vals: Vec<f64> = rows.iter().map(|r| r[j]).collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        for w in vals.windows(2) {
            let t = (w[0] + w[1]) / 2.0;
            let (mut gl, mut nl) = (0.0, 0usize);
            for (r, gi) in rows.iter().zip(&g) {
                if r[j] <= t {
                    gl += gi;
                    nl += 1;
                }
            }
            let nr = rows.len() - nl;
            if nl < min_leaf || nr < min_leaf {
                continue;
            }
            let gt: f64 = g.iter().sum();
            let gain = 0.5
                * (score(gl, h * nl as f64) + score(gt - gl, h * nr as f64) - score(gt, h * n));
            if gain > best.2 + 1e-9 {
                best = (j, t, gain);
            }
        }
    }
    (best.0, best.1)
}

#[test]
fn stump_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for _ in 0..120 {
        let y = rng.random_range(0..2usize);
        rows.push(vec![
            rng.random_range(0.0..1.0),
            y as f64 + 0.1 * rng.random_range(0.0..1.0),
            rng.random_range(0.0..1.0),
        ]);
        labels.push(y);
    }
    let m = FeatureMatrix::from_dense(names(3), LabelSpace::binary(), rows.clone(), labels.clone());
    let cfg = GbdtConfig {
        trees: 1,
        max_depth: 1,
        min_samples_leaf: 1,
        ..GbdtConfig::default()
    };
    let model = train_gbdt(&m, &cfg).unwrap();
    let ModelParams::Gbdt(g) = &model.model else { unreachable!() };
    let (feature, threshold) = best_stump(&rows, &labels, 1);
    assert_eq!(feature, 1);
    match &g.rounds[0][0].nodes[0] {
        TreeNode::Split { feature: f, threshold: t, .. } => {
            assert_eq!(*f, feature);
            assert_eq!(*t, threshold);
        }
        TreeNode::Leaf { .. } => panic!("expected a split"),
    }
}

/// Walks the serialized trees directly.
fn json_scores(model: &Value, row: &[f64]) -> Vec<f64> {
    let params = &model["model"]["parameters"];
    let n_classes = params["n_classes"].as_u64().unwrap() as usize;
    let mut raw: Vec<f64> = params["base_scores"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for round in params["rounds"].as_array().unwrap() {
        for (k, tree) in round.as_array().unwrap().iter().enumerate() {
            let nodes = tree["nodes"].as_array().unwrap();
            fn walk(nodes: &[Value], id: usize, row: &[f64]) -> f64 {
                let node = &nodes[id];
                if let Some(leaf) = node.get("leaf") {
                    return leaf["value"].as_f64().unwrap();
                }
                let s = &node["split"];
                let x = row[s["feature"].as_u64().unwrap() as usize];
                let left = if x.is_nan() {
                    s["missing_left"].as_bool().unwrap()
                } else {
                    x <= s["threshold"].as_f64().unwrap()
                };
                let next = if left { &s["left"] } else { &s["right"] };
                walk(nodes, next.as_u64().unwrap() as usize, row)
            }
            raw[k] += walk(nodes, 0, row);
        }
    }
    if n_classes == 2 {
        let p = 1.0 / (1.0 + (-raw[0]).exp());
        vec![1.0 - p, p]
    } else {
        let m = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let e: Vec<f64> = raw.iter().map(|r| (r - m).exp()).collect();
        let s: f64 = e.iter().sum();
        e.iter().map(|v| v / s).collect()
    }
}

fn three_class(n: usize, seed: u64) -> FeatureMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for _ in 0..n {
        let x: f64 = rng.random_range(0.0..3.0);
        let y: f64 = rng.random_range(0.0..1.0);
        labels.push((x as usize).min(2));
        rows.push(vec![x + 0.3 * (y - 0.5), y]);
    }
    FeatureMatrix::from_dense(names(2), LabelSpace::ternary(), rows, labels)
}

#[test]
fn ensemble_matches_tree_walk_oracle() {
    for m in [xor(300, 5), three_class(300, 6)] {
        let model = train_gbdt(&m, &small_gbdt(30)).unwrap();
        let doc: Value = serde_json::to_value(&model).map(|v| serde_json::json!({ "model": v["model"] })).unwrap();
        let preds = model.predict(&m).unwrap();
        for (row, p) in m.rows.iter().zip(&preds) {
            let oracle = json_scores(&doc, row);
            let oracle_label = oracle
                .iter()
                .enumerate()
                .fold(0, |b, (i, &s)| if s > oracle[b] { i } else { b });
            assert_eq!(p.label, oracle_label);
            for (a, b) in p.scores.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn round_trip_is_exact() {
    let m = three_class(1000, 7);
    let model = train_gbdt(&m, &small_gbdt(20)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    save(&model, &path).unwrap();
    let back: models::TrainedModel<f64> = load(&path).unwrap();
    assert_eq!(back, model);
    let a = model.predict(&m).unwrap();
    let b = back.predict(&m).unwrap();
    assert_eq!(a, b);

    let lin = train_linear(&m, &LinearConfig { rff_dims: Some(16), ..LinearConfig::default() }).unwrap();
    save(&lin, &path).unwrap();
    let back: models::TrainedModel<f64> = load(&path).unwrap();
    assert_eq!(lin.predict(&m).unwrap(), back.predict(&m).unwrap());
}

#[test]
fn f32_round_trip() {
    let m64 = xor(200, 8);
    let m = FeatureMatrix::from_dense(
        m64.feature_names.clone(),
        m64.label_space.clone(),
        m64.rows.iter().map(|r| r.iter().map(|&v| v as f32).collect()).collect(),
        m64.labels.clone(),
    );
    let model = train_gbdt(&m, &small_gbdt(20)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    save(&model, &path).unwrap();
    let back: models::TrainedModel<f32> = load(&path).unwrap();
    assert_eq!(model.predict(&m).unwrap(), back.predict(&m).unwrap());
    let wrong = load::<f64>(&path).unwrap_err();
    assert!(matches!(wrong, ModelError::ScalarMismatch { .. }));
}

#[test]
fn truncated_file_is_corrupt() {
    let m = xor(100, 10);
    let model = train_gbdt(&m, &small_gbdt(3)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    save(&model, &path).unwrap();
    let bytes = std::fs::read(&path).unwrap();
    std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
    let err = load::<f64>(&path).unwrap_err();
    assert!(err.to_string().starts_with("corrupt model"), "{err}");
}

#[test]
fn version_handling() {
    let m = xor(100, 11);
    let model = train_gbdt(&m, &small_gbdt(3)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    save(&model, &path).unwrap();
    let v2: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();

    // hand-built v1 layout
    let mut body = v2["model"].clone();
    let body_obj = body.as_object_mut().unwrap();
    let hash = body_obj.remove("feature_schema_hash").unwrap();
    body_obj.insert("schema_hash".into(), hash);
    let meta = body_obj.remove("metadata").unwrap();
    body_obj.insert("training".into(), meta);
    let v1 = serde_json::json!({ "magic": "CODETECT-MODEL", "format_version": 1, "model": body });
    std::fs::write(&path, v1.to_string()).unwrap();
    let migrated: models::TrainedModel<f64> = load(&path).unwrap();
    assert!(migrated.metadata.migration_note.as_deref().unwrap().contains("version 1"));
    assert_eq!(migrated.predict(&m).unwrap(), model.predict(&m).unwrap());

    let mut v3 = v2.clone();
    v3["format_version"] = 3.into();
    std::fs::write(&path, v3.to_string()).unwrap();
    let err = load::<f64>(&path).unwrap_err().to_string();
    assert!(err.contains('3') && err.contains('2'), "{err}");
}

#[test]
fn schema_mismatch_names_hash() {
    let m = xor(100, 12);
    let model = train_gbdt(&m, &small_gbdt(2)).unwrap();
    let other = FeatureMatrix::from_dense(names(3), LabelSpace::binary(), vec![vec![0.0; 3]], vec![0]);
    let err = model.predict(&other).unwrap_err().to_string();
    assert!(err.contains(&other.schema_hash));
}

#[test]
fn training_is_deterministic() {
    let m = three_class(300, 13);
    let cfg = GbdtConfig { subsample: 0.7, ..small_gbdt(15) };
    assert_eq!(train_gbdt(&m, &cfg).unwrap(), train_gbdt(&m, &cfg).unwrap());
    let lin = LinearConfig { rff_dims: Some(8), ..LinearConfig::default() };
    assert_eq!(train_linear(&m, &lin).unwrap(), train_linear(&m, &lin).unwrap());
}

#[test]
fn parallelism_does_not_change_trees() {
    let m = three_class(300, 14);
    let cfg = small_gbdt(10);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| train_gbdt(&m, &cfg).unwrap());
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let b = many.install(|| train_gbdt(&m, &cfg).unwrap());
    assert_eq!(a, b);
}

#[test]
fn hand_built_tie_goes_to_first_label() {
    let m = FeatureMatrix::from_dense(names(1), LabelSpace::binary(), vec![vec![0.0], vec![1.0]], vec![0, 1]);
    let mut model = train_gbdt(&m, &small_gbdt(1)).unwrap();
    if let ModelParams::Gbdt(g) = &mut model.model {
        g.base_scores = vec![0.0];
        g.rounds.clear();
    }
    let p = model.predict_row(&[0.5]);
    assert_eq!(p.scores, [0.5, 0.5]);
    assert_eq!(p.label, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn row_permutation_keeps_predictions(seed in 0u64..1000) {
        let m = three_class(150, seed);
        let mut order: Vec<usize> = (0..m.n_rows()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 1);
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let shuffled = m.select(&order);
        let cfg = small_gbdt(8);
        let a = train_gbdt(&m, &cfg).unwrap();
        let b = train_gbdt(&shuffled, &cfg).unwrap();
        prop_assert_eq!(a.predict(&m).unwrap(), b.predict(&m).unwrap());
    }

    #[test]
    fn monotone_score_transform_keeps_argmax(scores in prop::collection::vec(-5.0f64..5.0, 2..6)) {
        let base = models::argmax(&scores);
        let cubed: Vec<f64> = scores.iter().map(|s| s.powi(3) + 2.0 * s).collect();
        let exp: Vec<f64> = scores.iter().map(|s| s.exp()).collect();
        prop_assert_eq!(models::argmax(&cubed), base);
        prop_assert_eq!(models::argmax(&exp), base);
    }

    #[test]
    fn standardized_columns_are_unit(rows in prop::collection::vec(prop::collection::vec(-1e3f64..1e3, 3), 3..40)) {
        let s = models::Standardizer::fit(&rows, 3);
        let z: Vec<Vec<f64>> = rows.iter().map(|r| s.transform(r)).collect();
        for c in 0..s.columns.len() {
            let n = z.len() as f64;
            let mean = z.iter().map(|r| r[c]).sum::<f64>() / n;
            let sd = (z.iter().map(|r| (r[c] - mean).powi(2)).sum::<f64>() / n).sqrt();
            prop_assert!(mean.abs() < 1e-9);
            prop_assert!((sd - 1.0).abs() < 1e-6);
        }
    }
}
