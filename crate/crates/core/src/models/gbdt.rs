//! Gradient-boosted regression trees on histogram-binned features.
//!
//! Gradient and hessian sums are accumulated in 32.32 fixed point, so split
//! search is exact integer arithmetic: trees do not depend on row order or
//! on how the feature scan is parallelized. Each boosting round is checked
//! against the training loss and its leaf values are halved until the loss
//! does not increase.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::scalar::Scalar;
use crate::stylometry::FeatureMatrix;

const FIXED_SCALE: f64 = 4_294_967_296.0;
const MISSING_BIN: u16 = u16::MAX;
const MAX_BACKTRACK: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GbdtConfig {
    pub trees: usize,
    pub learning_rate: f64,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub subsample: f64,
    /// L2 penalty on leaf values.
    pub l2_leaf: f64,
    pub max_bins: usize,
    pub seed: u64,
}

impl Default for GbdtConfig {
    fn default() -> Self {
        GbdtConfig {
            trees: 2000,
            learning_rate: 0.1,
            max_depth: 6,
            min_samples_leaf: 20,
            subsample: 1.0,
            l2_leaf: 1.0,
            max_bins: 255,
            seed: 0,
        }
    }
}

impl GbdtConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |m: &str| Err(ModelError::InvalidConfig(m.into()));
        if self.trees == 0 {
            return bad("trees must be >= 1");
        }
        if self.learning_rate.is_nan() || self.learning_rate <= 0.0 {
            return bad("learning_rate must be > 0");
        }
        if !(self.subsample > 0.0 && self.subsample <= 1.0) {
            return bad("subsample must be in (0, 1]");
        }
        if self.l2_leaf < 0.0 {
            return bad("l2_leaf must be >= 0");
        }
        if !(2..=u16::MAX as usize - 1).contains(&self.max_bins) {
            return bad("max_bins must be in [2, 65534]");
        }
        if self.min_samples_leaf == 0 {
            return bad("min_samples_leaf must be >= 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", rename_all = "snake_case")]
pub enum TreeNode<T> {
    Split {
        feature: usize,
        /// Rows with `x <= threshold` go left.
        threshold: T,
        /// Direction taken by NaN.
        missing_left: bool,
        left: usize,
        right: usize,
        gain: f64,
    },
    Leaf {
        value: T,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Tree<T> {
    pub nodes: Vec<TreeNode<T>>,
}

impl<T: Scalar> Tree<T> {
    pub fn leaf_index(&self, row: &[T]) -> usize {
        let mut id = 0;
        loop {
            match &self.nodes[id] {
                TreeNode::Leaf { .. } => return id,
                TreeNode::Split {
                    feature,
                    threshold,
                    missing_left,
                    left,
                    right,
                    ..
                } => {
                    let x = row[*feature];
                    let go_left = if x.is_nan() { *missing_left } else { x <= *threshold };
                    id = if go_left { *left } else { *right };
                }
            }
        }
    }

    pub fn predict(&self, row: &[T]) -> T {
        match &self.nodes[self.leaf_index(row)] {
            TreeNode::Leaf { value } => *value,
            TreeNode::Split { .. } => unreachable!("leaf_index stops at leaves"),
        }
    }

    fn scale_leaves(&mut self, factor: T) {
        for node in &mut self.nodes {
            if let TreeNode::Leaf { value } = node {
                *value = *value * factor;
            }
        }
    }
}

/// Boosted ensemble. Binary tasks use one logistic output; larger label
/// spaces use one softmax output per class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct GbdtModel<T> {
    pub n_classes: usize,
    pub base_scores: Vec<T>,
    /// `rounds[r][k]` is the tree for output `k` in round `r`.
    pub rounds: Vec<Vec<Tree<T>>>,
    /// Mean training loss before any tree (index 0) and after each round.
    pub loss_curve: Vec<f64>,
}

fn n_outputs(n_classes: usize) -> usize {
    if n_classes == 2 {
        1
    } else {
        n_classes
    }
}

impl<T: Scalar> GbdtModel<T> {
    pub fn n_outputs(&self) -> usize {
        n_outputs(self.n_classes)
    }

    pub fn raw(&self, row: &[T]) -> Vec<T> {
        let mut raw = self.base_scores.clone();
        for round in &self.rounds {
            for (r, tree) in raw.iter_mut().zip(round) {
                *r = *r + tree.predict(row);
            }
        }
        raw
    }

    pub fn scores(&self, row: &[T]) -> Vec<T> {
        link(&self.raw(row), self.n_classes)
    }

    /// Summed split gain per feature over the whole ensemble.
    pub fn feature_gains(&self, n_features: usize) -> Vec<f64> {
        let mut gains = vec![0.0; n_features];
        for tree in self.rounds.iter().flatten() {
            for node in &tree.nodes {
                if let TreeNode::Split { feature, gain, .. } = node {
                    gains[*feature] += gain;
                }
            }
        }
        gains
    }

    /// Features used by at least one split.
    pub fn used_features(&self) -> std::collections::BTreeSet<usize> {
        self.rounds
            .iter()
            .flatten()
            .flat_map(|t| &t.nodes)
            .filter_map(|n| match n {
                TreeNode::Split { feature, .. } => Some(*feature),
                TreeNode::Leaf { .. } => None,
            })
            .collect()
    }
}

/// Sigmoid for a single output, softmax otherwise.
fn link<T: Scalar>(raw: &[T], n_classes: usize) -> Vec<T> {
    if n_classes == 2 {
        let p = T::one() / (T::one() + (-raw[0]).exp());
        return vec![T::one() - p, p];
    }
    let max = raw.iter().copied().fold(T::neg_infinity(), T::max);
    let exps: Vec<T> = raw.iter().map(|&r| (r - max).exp()).collect();
    let total = exps.iter().fold(T::zero(), |a, &b| a + b);
    exps.into_iter().map(|e| e / total).collect()
}

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn row_loss<T: Scalar>(raw: &[T], label: usize, n_classes: usize) -> f64 {
    if n_classes == 2 {
        let f = raw[0].to_f64_lossy();
        softplus(f) - if label == 1 { f } else { 0.0 }
    } else {
        let r: Vec<f64> = raw.iter().map(|v| v.to_f64_lossy()).collect();
        let max = r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lse = max + r.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
        lse - r[label]
    }
}

/// Total loss in fixed point, so comparisons do not depend on summation order.
fn total_loss<T: Scalar>(raw: &[Vec<T>], labels: &[usize], n_classes: usize) -> i128 {
    raw.iter()
        .zip(labels)
        .map(|(r, &y)| (row_loss(r, y, n_classes) * FIXED_SCALE).round() as i128)
        .sum()
}

fn to_fixed(v: f64) -> i64 {
    (v * FIXED_SCALE).round() as i64
}

/// Split thresholds for one column: midpoints between distinct values, or
/// between quantile cut points when there are more than `max_bins` of them.
pub fn column_cuts<T: Scalar>(values: impl Iterator<Item = T>, max_bins: usize) -> Vec<T> {
    let mut distinct: Vec<T> = values.filter(|v| !v.is_nan()).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("NaN filtered"));
    distinct.dedup();
    let two = T::lit(2.0);
    let mid = |i: usize| (distinct[i - 1] + distinct[i]) / two;
    let mut cuts: Vec<T> = if distinct.len() <= max_bins {
        (1..distinct.len()).map(mid).collect()
    } else {
        (1..max_bins)
            .map(|q| mid((q * distinct.len() / max_bins).max(1)))
            .collect()
    };
    cuts.dedup();
    cuts
}

fn bin_of<T: Scalar>(cuts: &[T], x: T) -> u16 {
    if x.is_nan() {
        MISSING_BIN
    } else {
        cuts.partition_point(|&t| t < x) as u16
    }
}

struct Binned<T> {
    cuts: Vec<Vec<T>>,
    /// Column-major bin indices.
    bins: Vec<Vec<u16>>,
}

impl<T: Scalar> Binned<T> {
    fn new(rows: &[Vec<T>], n_features: usize, max_bins: usize) -> Self {
        let (cuts, bins) = (0..n_features)
            .into_par_iter()
            .map(|j| {
                let cuts = column_cuts(rows.iter().map(|r| r[j]), max_bins);
                let bins = rows.iter().map(|r| bin_of(&cuts, r[j])).collect();
                (cuts, bins)
            })
            .unzip();
        Binned { cuts, bins }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Stats {
    g: i64,
    h: i64,
    n: usize,
}

impl Stats {
    fn add(&mut self, g: i64, h: i64) {
        self.g += g;
        self.h += h;
        self.n += 1;
    }

    fn plus(self, o: Stats) -> Stats {
        Stats {
            g: self.g + o.g,
            h: self.h + o.h,
            n: self.n + o.n,
        }
    }

    fn minus(self, o: Stats) -> Stats {
        Stats {
            g: self.g - o.g,
            h: self.h - o.h,
            n: self.n - o.n,
        }
    }

    fn score(self, lambda: f64) -> f64 {
        let g = self.g as f64 / FIXED_SCALE;
        let h = self.h as f64 / FIXED_SCALE;
        g * g / (h + lambda)
    }

    fn leaf_value(self, lambda: f64) -> f64 {
        let g = self.g as f64 / FIXED_SCALE;
        let h = self.h as f64 / FIXED_SCALE;
        if h + lambda == 0.0 {
            0.0
        } else {
            -g / (h + lambda)
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    gain: f64,
    feature: usize,
    bin: usize,
    missing_left: bool,
}

impl Candidate {
    /// Higher gain wins; ties go to the lower feature, then the lower bin,
    /// then missing-left.
    fn better(self, other: Candidate) -> Candidate {
        let key = |c: &Candidate| (c.feature, c.bin, !c.missing_left);
        if self.gain > other.gain || (self.gain == other.gain && key(&self) < key(&other)) {
            self
        } else {
            other
        }
    }
}

struct Grower<'a, T> {
    binned: &'a Binned<T>,
    grad: &'a [i64],
    hess: &'a [i64],
    cfg: &'a GbdtConfig,
}

impl<T: Scalar> Grower<'_, T> {
    fn best_for_feature(&self, j: usize, rows: &[usize], total: Stats) -> Option<Candidate> {
        let n_bins = self.binned.cuts[j].len() + 1;
        if n_bins < 2 {
            return None;
        }
        let mut hist = vec![Stats::default(); n_bins];
        let mut missing = Stats::default();
        let col = &self.binned.bins[j];
        for &i in rows {
            let b = col[i];
            if b == MISSING_BIN {
                missing.add(self.grad[i], self.hess[i]);
            } else {
                hist[b as usize].add(self.grad[i], self.hess[i]);
            }
        }
        let lambda = self.cfg.l2_leaf;
        let min_leaf = self.cfg.min_samples_leaf;
        let parent = total.score(lambda);
        let directions: &[bool] = if missing.n > 0 { &[true, false] } else { &[true] };
        let mut best: Option<Candidate> = None;
        let mut left = Stats::default();
        for (b, bin) in hist.iter().enumerate().take(n_bins - 1) {
            left = left.plus(*bin);
            for &missing_left in directions {
                let l = if missing_left { left.plus(missing) } else { left };
                let r = total.minus(l);
                if l.n < min_leaf || r.n < min_leaf {
                    continue;
                }
                let gain = 0.5 * (l.score(lambda) + r.score(lambda) - parent);
                if gain <= 1e-12 {
                    continue;
                }
                let cand = Candidate {
                    gain,
                    feature: j,
                    bin: b,
                    missing_left,
                };
                best = Some(best.map_or(cand, |c| c.better(cand)));
            }
        }
        best
    }

    fn grow(&self, rows: Vec<usize>) -> Tree<T> {
        let lambda = self.cfg.l2_leaf;
        let lr = self.cfg.learning_rate;
        let n_features = self.binned.cuts.len();
        let mut nodes: Vec<TreeNode<T>> = Vec::new();
        // (node slot, rows, depth)
        let mut work = vec![(0usize, rows, 0usize)];
        nodes.push(TreeNode::Leaf { value: T::zero() });
        while let Some((slot, rows, depth)) = work.pop() {
            let mut total = Stats::default();
            for &i in &rows {
                total.add(self.grad[i], self.hess[i]);
            }
            let leaf = TreeNode::Leaf {
                value: T::lit(lr * total.leaf_value(lambda)),
            };
            if depth >= self.cfg.max_depth || rows.len() < 2 * self.cfg.min_samples_leaf {
                nodes[slot] = leaf;
                continue;
            }
            let best = (0..n_features)
                .into_par_iter()
                .filter_map(|j| self.best_for_feature(j, &rows, total))
                .reduce_with(Candidate::better);
            let Some(best) = best else {
                nodes[slot] = leaf;
                continue;
            };
            let col = &self.binned.bins[best.feature];
            let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&i| {
                let b = col[i];
                if b == MISSING_BIN {
                    best.missing_left
                } else {
                    b as usize <= best.bin
                }
            });
            let left = nodes.len();
            nodes.push(TreeNode::Leaf { value: T::zero() });
            let right = nodes.len();
            nodes.push(TreeNode::Leaf { value: T::zero() });
            nodes[slot] = TreeNode::Split {
                feature: best.feature,
                threshold: self.binned.cuts[best.feature][best.bin],
                missing_left: best.missing_left,
                left,
                right,
                gain: best.gain,
            };
            work.push((right, right_rows, depth + 1));
            work.push((left, left_rows, depth + 1));
        }
        Tree { nodes }
    }
}

/// Gradient and hessian of the loss with respect to output `k`.
fn gradients<T: Scalar>(raw: &[Vec<T>], labels: &[usize], n_classes: usize, k: usize) -> (Vec<i64>, Vec<i64>) {
    raw.iter()
        .zip(labels)
        .map(|(r, &y)| {
            let p = link(r, n_classes);
            let (pk, target) = if n_classes == 2 {
                (p[1].to_f64_lossy(), usize::from(y == 1))
            } else {
                (p[k].to_f64_lossy(), usize::from(y == k))
            };
            let g = pk - target as f64;
            let h = (pk * (1.0 - pk)).max(0.0);
            (to_fixed(g), to_fixed(h))
        })
        .unzip()
}

fn base_scores<T: Scalar>(labels: &[usize], n_classes: usize) -> Vec<T> {
    let mut counts = vec![0usize; n_classes];
    for &l in labels {
        counts[l] += 1;
    }
    let n = labels.len() as f64;
    let prior = |c: usize| (counts[c] as f64 + 1.0) / (n + n_classes as f64);
    if n_classes == 2 {
        vec![T::lit((prior(1) / prior(0)).ln())]
    } else {
        (0..n_classes).map(|c| T::lit(prior(c).ln())).collect()
    }
}

pub(crate) fn train<T: Scalar>(
    matrix: &FeatureMatrix<T>,
    cfg: &GbdtConfig,
) -> Result<GbdtModel<T>, ModelError> {
    cfg.validate()?;
    let n_classes = matrix.label_space.len();
    let outputs = n_outputs(n_classes);
    let n_rows = matrix.n_rows();
    let binned = Binned::new(&matrix.rows, matrix.n_features(), cfg.max_bins);
    let base = base_scores::<T>(&matrix.labels, n_classes);
    let mut raw: Vec<Vec<T>> = vec![base.clone(); n_rows];
    let mut loss = total_loss(&raw, &matrix.labels, n_classes);
    let mut loss_curve = vec![loss as f64 / FIXED_SCALE / n_rows as f64];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rounds = Vec::with_capacity(cfg.trees);

    for _ in 0..cfg.trees {
        let rows: Vec<usize> = if cfg.subsample < 1.0 {
            (0..n_rows).filter(|_| rng.random::<f64>() < cfg.subsample).collect()
        } else {
            (0..n_rows).collect()
        };
        let mut round: Vec<Tree<T>> = (0..outputs)
            .map(|k| {
                let (grad, hess) = gradients(&raw, &matrix.labels, n_classes, k);
                Grower {
                    binned: &binned,
                    grad: &grad,
                    hess: &hess,
                    cfg,
                }
                .grow(rows.clone())
            })
            .collect();

        let mut accepted = None;
        for _ in 0..MAX_BACKTRACK {
            let candidate: Vec<Vec<T>> = raw
                .par_iter()
                .zip(&matrix.rows)
                .map(|(r, row)| r.iter().zip(&round).map(|(&v, t)| v + t.predict(row)).collect())
                .collect();
            let new_loss = total_loss(&candidate, &matrix.labels, n_classes);
            if new_loss <= loss {
                accepted = Some((candidate, new_loss));
                break;
            }
            for tree in &mut round {
                tree.scale_leaves(T::lit(0.5));
            }
        }
        match accepted {
            Some((candidate, new_loss)) => {
                raw = candidate;
                loss = new_loss;
            }
            None => {
                for tree in &mut round {
                    tree.scale_leaves(T::zero());
                }
            }
        }
        loss_curve.push(loss as f64 / FIXED_SCALE / n_rows as f64);
        rounds.push(round);
    }

    Ok(GbdtModel {
        n_classes,
        base_scores: base,
        rounds,
        loss_curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cuts_are_midpoints() {
        let cuts = column_cuts([3.0, 1.0, 2.0, 2.0, f64::NAN].into_iter(), 255);
        assert_eq!(cuts, [1.5, 2.5]);
        assert_eq!(bin_of(&cuts, 1.5), 0);
        assert_eq!(bin_of(&cuts, 2.0), 1);
        assert_eq!(bin_of(&cuts, 9.0), 2);
        assert_eq!(bin_of(&cuts, f64::NAN), MISSING_BIN);
    }

    #[test]
    fn quantile_cuts_are_bounded() {
        let cuts = column_cuts((0..10_000).map(|i| i as f64), 16);
        assert_eq!(cuts.len(), 15);
        assert!(cuts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn candidate_tie_break() {
        let a = Candidate { gain: 1.0, feature: 2, bin: 0, missing_left: true };
        let b = Candidate { gain: 1.0, feature: 1, bin: 5, missing_left: false };
        assert_eq!(a.better(b).feature, 1);
        assert_eq!(b.better(a).feature, 1);
    }

    #[test]
    fn softmax_and_sigmoid_sum_to_one() {
        let p = link(&[0.3f64, -1.0, 2.0], 3);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let q = link(&[0.0f64], 2);
        assert_eq!(q, [0.5, 0.5]);
    }
}
