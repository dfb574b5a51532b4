use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::scalar::Scalar;
use crate::stylometry::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinearConfig {
    pub l2: f64,
    pub epochs: usize,
    /// Initial step size; decays as `eta0 / (1 + eta0 * l2 * t)`.
    pub learning_rate: f64,
    /// Random Fourier feature count for an approximate RBF kernel.
    pub rff_dims: Option<usize>,
    /// RBF width; defaults to `1 / n_features`.
    pub rff_gamma: Option<f64>,
    pub seed: u64,
}

impl Default for LinearConfig {
    fn default() -> Self {
        LinearConfig {
            l2: 1e-4,
            epochs: 20,
            learning_rate: 0.01,
            rff_dims: None,
            rff_gamma: None,
            seed: 0,
        }
    }
}

impl LinearConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.l2.is_nan() || self.l2 <= 0.0 {
            return Err(ModelError::InvalidConfig("l2 must be > 0".into()));
        }
        if self.learning_rate.is_nan() || self.learning_rate <= 0.0 {
            return Err(ModelError::InvalidConfig("learning_rate must be > 0".into()));
        }
        if self.epochs == 0 {
            return Err(ModelError::InvalidConfig("epochs must be >= 1".into()));
        }
        if self.rff_dims == Some(0) {
            return Err(ModelError::InvalidConfig("rff_dims must be >= 1".into()));
        }
        Ok(())
    }
}

/// Per-column shift and scale learned on the training matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Standardizer<T> {
    /// Matrix columns that survive (non-constant).
    pub columns: Vec<usize>,
    pub means: Vec<T>,
    pub stdevs: Vec<T>,
}

impl<T: Scalar> Standardizer<T> {
    /// Fits on `rows`, dropping zero-variance columns.
    pub fn fit(rows: &[Vec<T>], n_features: usize) -> Self {
        let n = T::from_count(rows.len().max(1));
        let mut columns = Vec::new();
        let mut means = Vec::new();
        let mut stdevs = Vec::new();
        for j in 0..n_features {
            let mean = rows.iter().fold(T::zero(), |acc, r| acc + r[j]) / n;
            let var = rows
                .iter()
                .fold(T::zero(), |acc, r| acc + (r[j] - mean) * (r[j] - mean))
                / n;
            let sd = var.sqrt();
            if sd > T::zero() && rows.iter().any(|r| r[j] != rows[0][j]) {
                columns.push(j);
                means.push(mean);
                stdevs.push(sd);
            }
        }
        Standardizer { columns, means, stdevs }
    }

    pub fn transform(&self, row: &[T]) -> Vec<T> {
        self.columns
            .iter()
            .zip(self.means.iter().zip(&self.stdevs))
            .map(|(&j, (&m, &s))| (row[j] - m) / s)
            .collect()
    }
}

/// `z(x) = sqrt(2/D) cos(Wx + b)` with `W ~ N(0, 2 gamma)`, `b ~ U[0, 2 pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct FourierMap<T> {
    pub gamma: f64,
    pub weights: Vec<Vec<T>>,
    pub offsets: Vec<T>,
}

impl<T: Scalar> FourierMap<T> {
    pub fn sample(input_dim: usize, dims: usize, gamma: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5246_465f_4d41_5000);
        let normal = Normal::new(0.0, (2.0 * gamma).sqrt()).expect("positive gamma");
        let weights = (0..dims)
            .map(|_| (0..input_dim).map(|_| T::lit(normal.sample(&mut rng))).collect())
            .collect();
        let offsets = (0..dims)
            .map(|_| T::lit(rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        FourierMap { gamma, weights, offsets }
    }

    pub fn transform(&self, x: &[T]) -> Vec<T> {
        let scale = (T::lit(2.0) / T::from_count(self.weights.len())).sqrt();
        self.weights
            .iter()
            .zip(&self.offsets)
            .map(|(w, &b)| {
                let dot = w.iter().zip(x).fold(T::zero(), |acc, (&a, &v)| acc + a * v);
                scale * (dot + b).cos()
            })
            .collect()
    }
}

/// One-vs-rest hinge-loss classifier in the primal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LinearModel<T> {
    pub standardizer: Standardizer<T>,
    pub fourier: Option<FourierMap<T>>,
    /// One weight vector per class.
    pub weights: Vec<Vec<T>>,
    pub biases: Vec<T>,
    /// Platt `(a, b)` per class: `P(class) = sigmoid(a * margin + b)`.
    pub platt: Vec<(T, T)>,
    /// Set when no informative feature survived; every row gets this class.
    pub constant_class: Option<usize>,
}

fn sigmoid<T: Scalar>(x: T) -> T {
    T::one() / (T::one() + (-x).exp())
}

impl<T: Scalar> LinearModel<T> {
    fn embed(&self, row: &[T]) -> Vec<T> {
        let z = self.standardizer.transform(row);
        match &self.fourier {
            Some(map) => map.transform(&z),
            None => z,
        }
    }

    pub fn decision(&self, row: &[T]) -> Vec<T> {
        let x = self.embed(row);
        self.weights
            .iter()
            .zip(&self.biases)
            .map(|(w, &b)| w.iter().zip(&x).fold(b, |acc, (&wi, &xi)| acc + wi * xi))
            .collect()
    }

    /// Platt-scaled margins, normalized to sum to one.
    pub fn scores(&self, row: &[T]) -> Vec<T> {
        if let Some(c) = self.constant_class {
            let mut s = vec![T::zero(); self.weights.len()];
            s[c] = T::one();
            return s;
        }
        let raw: Vec<T> = self
            .decision(row)
            .into_iter()
            .zip(&self.platt)
            .map(|(m, &(a, b))| sigmoid(a * m + b))
            .collect();
        let total = raw.iter().fold(T::zero(), |a, &b| a + b);
        raw.into_iter().map(|s| s / total).collect()
    }
}

fn majority(labels: &[usize], n_classes: usize) -> usize {
    let mut counts = vec![0usize; n_classes];
    for &l in labels {
        counts[l] += 1;
    }
    // first maximum wins
    (0..n_classes).fold(0, |best, c| if counts[c] > counts[best] { c } else { best })
}

pub(crate) fn train<T: Scalar>(
    matrix: &FeatureMatrix<T>,
    cfg: &LinearConfig,
) -> Result<LinearModel<T>, ModelError> {
    cfg.validate()?;
    let n_classes = matrix.label_space.len();
    let standardizer = Standardizer::fit(&matrix.rows, matrix.n_features());
    if standardizer.columns.is_empty() {
        return Ok(LinearModel {
            standardizer,
            fourier: None,
            weights: vec![Vec::new(); n_classes],
            biases: vec![T::zero(); n_classes],
            platt: vec![(T::one(), T::zero()); n_classes],
            constant_class: Some(majority(&matrix.labels, n_classes)),
        });
    }

    let standardized: Vec<Vec<T>> = matrix.rows.iter().map(|r| standardizer.transform(r)).collect();
    let fourier = cfg.rff_dims.map(|dims| {
        let d = standardizer.columns.len();
        let gamma = cfg.rff_gamma.unwrap_or(1.0 / d as f64);
        FourierMap::sample(d, dims, gamma, cfg.seed)
    });
    let inputs: Vec<Vec<T>> = match &fourier {
        Some(map) => standardized.iter().map(|x| map.transform(x)).collect(),
        None => standardized,
    };

    let fitted: Vec<(Vec<T>, T)> = (0..n_classes)
        .into_par_iter()
        .map(|class| fit_binary(&inputs, &matrix.labels, class, cfg))
        .collect();
    let (weights, biases): (Vec<Vec<T>>, Vec<T>) = fitted.into_iter().unzip();
    let platt = weights
        .iter()
        .zip(&biases)
        .enumerate()
        .map(|(class, (w, &b))| {
            let margins: Vec<f64> = inputs
                .iter()
                .map(|x| w.iter().zip(x).fold(b, |acc, (&wi, &xi)| acc + wi * xi).to_f64_lossy())
                .collect();
            let targets: Vec<bool> = matrix.labels.iter().map(|&l| l == class).collect();
            let (a, b) = fit_platt(&margins, &targets);
            (T::lit(a), T::lit(b))
        })
        .collect();
    Ok(LinearModel {
        standardizer,
        fourier,
        weights,
        biases,
        platt,
        constant_class: None,
    })
}

/// Stochastic subgradient descent on
/// `l2/2 |w|^2 + mean(max(0, 1 - y (w.x + b)))` for `class` versus the rest.
fn fit_binary<T: Scalar>(
    inputs: &[Vec<T>],
    labels: &[usize],
    class: usize,
    cfg: &LinearConfig,
) -> (Vec<T>, T) {
    let dim = inputs.first().map_or(0, Vec::len);
    let mut w = vec![T::zero(); dim];
    let mut b = T::zero();
    let eta0 = T::lit(cfg.learning_rate);
    let lambda = T::lit(cfg.l2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(class as u64));
    let mut order: Vec<usize> = (0..inputs.len()).collect();
    let mut t = 0usize;
    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            let eta = eta0 / (T::one() + eta0 * lambda * T::from_count(t));
            t += 1;
            let y = if labels[i] == class { T::one() } else { -T::one() };
            let x = &inputs[i];
            let margin = y * (w.iter().zip(x).fold(b, |acc, (&wi, &xi)| acc + wi * xi));
            let shrink = T::one() - eta * lambda;
            if margin < T::one() {
                for (wi, &xi) in w.iter_mut().zip(x) {
                    *wi = *wi * shrink + eta * y * xi;
                }
                b = b + eta * y;
            } else {
                for wi in w.iter_mut() {
                    *wi = *wi * shrink;
                }
            }
        }
    }
    (w, b)
}

/// Fits `sigmoid(a * f + b)` to binary targets by Newton's method with
/// Platt's smoothed targets `(n+ + 1)/(n+ + 2)` and `1/(n- + 2)`.
pub fn fit_platt(margins: &[f64], targets: &[bool]) -> (f64, f64) {
    let n_pos = targets.iter().filter(|&&t| t).count() as f64;
    let n_neg = targets.len() as f64 - n_pos;
    let hi = (n_pos + 1.0) / (n_pos + 2.0);
    let lo = 1.0 / (n_neg + 2.0);
    let t: Vec<f64> = targets.iter().map(|&y| if y { hi } else { lo }).collect();
    let objective = |a: f64, b: f64| -> f64 {
        margins
            .iter()
            .zip(&t)
            .map(|(&f, &ti)| {
                let z = a * f + b;
                // -t log p - (1 - t) log(1 - p) with p = sigmoid(z)
                let log1pexp = if z > 0.0 { z + (-z).exp().ln_1p() } else { z.exp().ln_1p() };
                log1pexp - ti * z
            })
            .sum()
    };
    let (mut a, mut b) = (1.0, ((n_pos + 1.0) / (n_neg + 1.0)).ln());
    let mut current = objective(a, b);
    for _ in 0..100 {
        let (mut ga, mut gb, mut haa, mut hab, mut hbb) = (0.0, 0.0, 1e-12, 0.0, 1e-12);
        for (&f, &ti) in margins.iter().zip(&t) {
            let p = 1.0 / (1.0 + (-(a * f + b)).exp());
            let w = p * (1.0 - p);
            ga += (p - ti) * f;
            gb += p - ti;
            haa += w * f * f;
            hab += w * f;
            hbb += w;
        }
        if ga.abs() < 1e-7 && gb.abs() < 1e-7 {
            break;
        }
        let det = haa * hbb - hab * hab;
        let (da, db) = (-(hbb * ga - hab * gb) / det, -(haa * gb - hab * ga) / det);
        let mut step = 1.0;
        while step > 1e-10 {
            let next = objective(a + step * da, b + step * db);
            if next < current {
                a += step * da;
                b += step * db;
                current = next;
                break;
            }
            step *= 0.5;
        }
        if step <= 1e-10 {
            break;
        }
    }
    (a, b)
}
