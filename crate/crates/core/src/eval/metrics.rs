use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use super::EvalError;

/// Square count matrix, rows = gold, columns = predicted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub counts: Vec<Vec<u64>>,
}

impl Confusion {
    pub fn new(n_classes: usize) -> Self {
        Confusion {
            counts: vec![vec![0; n_classes]; n_classes],
        }
    }

    pub fn from_pairs(preds: &[usize], golds: &[usize], n_classes: usize) -> Result<Self, EvalError> {
        if preds.len() != golds.len() {
            return Err(EvalError::LengthMismatch {
                preds: preds.len(),
                golds: golds.len(),
            });
        }
        let mut c = Confusion::new(n_classes);
        for (&p, &g) in preds.iter().zip(golds) {
            if p >= n_classes || g >= n_classes {
                return Err(EvalError::LabelOutOfRange(p.max(g)));
            }
            c.counts[g][p] += 1;
        }
        Ok(c)
    }

    pub fn n_classes(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.n_classes()).map(|i| self.counts[i][i]).sum()
    }

    pub fn gold_count(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    pub fn pred_count(&self, class: usize) -> u64 {
        self.counts.iter().map(|r| r[class]).sum()
    }

    /// Classes with at least one gold sample.
    pub fn gold_classes(&self) -> Vec<usize> {
        (0..self.n_classes()).filter(|&c| self.gold_count(c) > 0).collect()
    }

    pub fn merge(&mut self, other: &Confusion) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics<N> {
    pub precision: N,
    pub recall: N,
    pub f1: N,
}

/// Macro precision/recall/F plus accuracy. `precision` is absent when the
/// gold labels cover a single class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics<N> {
    pub precision: Option<N>,
    pub recall: N,
    pub f1: N,
    pub accuracy: N,
}

fn num<N: Num + FromPrimitive>(v: u64) -> N {
    N::from_u64(v).expect("count fits")
}

/// `a / b`, with `0 / 0 = 0`.
fn ratio<N: Num + FromPrimitive>(a: u64, b: u64) -> N {
    if b == 0 {
        N::zero()
    } else {
        num::<N>(a) / num::<N>(b)
    }
}

pub fn class_metrics<N: Num + FromPrimitive + Clone>(c: &Confusion, class: usize) -> ClassMetrics<N> {
    let tp = c.counts[class][class];
    let precision: N = ratio(tp, c.pred_count(class));
    let recall: N = ratio(tp, c.gold_count(class));
    let denom = precision.clone() + recall.clone();
    let f1 = if denom.is_zero() {
        N::zero()
    } else {
        (N::one() + N::one()) * precision.clone() * recall.clone() / denom
    };
    ClassMetrics { precision, recall, f1 }
}

fn mean<N: Num + FromPrimitive + Clone>(values: impl Iterator<Item = N>) -> N {
    let (sum, n) = values.fold((N::zero(), 0u64), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        N::zero()
    } else {
        sum / num::<N>(n)
    }
}

/// Unweighted means over every class of the label space.
pub fn metrics_from_confusion<N: Num + FromPrimitive + Clone>(c: &Confusion) -> Metrics<N> {
    let per: Vec<ClassMetrics<N>> = (0..c.n_classes()).map(|k| class_metrics(c, k)).collect();
    Metrics {
        precision: Some(mean(per.iter().map(|m| m.precision.clone()))),
        recall: mean(per.iter().map(|m| m.recall.clone())),
        f1: mean(per.iter().map(|m| m.f1.clone())),
        accuracy: ratio(c.trace(), c.total()),
    }
}

pub fn macro_metrics<N: Num + FromPrimitive + Clone>(
    preds: &[usize],
    golds: &[usize],
    n_classes: usize,
) -> Result<Metrics<N>, EvalError> {
    if golds.is_empty() {
        return Err(EvalError::Empty);
    }
    let c = Confusion::from_pairs(preds, golds, n_classes)?;
    Ok(metrics_from_confusion(&c))
}

/// Like [`metrics_from_confusion`], except that a confusion matrix whose
/// gold labels cover one class averages recall and F over the gold classes
/// only and omits precision. Returns whether that rule applied.
pub fn report_metrics<N: Num + FromPrimitive + Clone>(c: &Confusion) -> (Metrics<N>, bool) {
    let gold = c.gold_classes();
    if gold.len() != 1 {
        return (metrics_from_confusion(c), false);
    }
    let m = class_metrics::<N>(c, gold[0]);
    (
        Metrics {
            precision: None,
            recall: m.recall,
            f1: m.f1,
            accuracy: ratio(c.trace(), c.total()),
        },
        true,
    )
}

impl<N: Clone + Into<f64>> Metrics<N> {
    pub fn to_f64(&self) -> Metrics<f64> {
        Metrics {
            precision: self.precision.clone().map(Into::into),
            recall: self.recall.clone().into(),
            f1: self.f1.clone().into(),
            accuracy: self.accuracy.clone().into(),
        }
    }
}

/// Macro-F1 of binary decisions, `true` meaning llm.
pub fn binary_macro_f1(preds: &[bool], golds: &[bool]) -> f64 {
    let p: Vec<usize> = preds.iter().map(|&b| usize::from(b)).collect();
    let g: Vec<usize> = golds.iter().map(|&b| usize::from(b)).collect();
    macro_metrics::<f64>(&p, &g, 2).map_or(0.0, |m| m.f1)
}
