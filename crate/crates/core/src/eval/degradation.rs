use serde::{Deserialize, Serialize};

use super::metrics::Confusion;
use super::report::MetricRow;
use super::EvalError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegradationBin {
    pub lower: f64,
    pub upper: f64,
    /// None for an empty bin.
    pub metrics: Option<MetricRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegradationCurve {
    pub bins: Vec<DegradationBin>,
    /// Rank correlation of bin midpoint and bin accuracy over non-empty bins.
    pub spearman: Option<f64>,
}

impl DegradationCurve {
    /// Accuracies of non-empty bins, in bin order.
    pub fn accuracies(&self) -> Vec<f64> {
        self.bins
            .iter()
            .filter_map(|b| b.metrics.as_ref().map(|m| m.accuracy))
            .collect()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.accuracies().windows(2).all(|w| w[1] <= w[0])
    }

    /// Non-increasing up to sampling noise: no accuracy rise between
    /// adjacent non-empty bins exceeds `z` pooled two-proportion standard
    /// errors.
    pub fn is_non_increasing_within(&self, z: f64) -> bool {
        let rows: Vec<&MetricRow> = self.bins.iter().filter_map(|b| b.metrics.as_ref()).collect();
        rows.windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            let (na, nb) = (a.n as f64, b.n as f64);
            let pooled = (a.accuracy * na + b.accuracy * nb) / (na + nb);
            let se = (pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb)).sqrt();
            b.accuracy - a.accuracy <= z * se
        })
    }
}

/// Two-sided 95% normal quantile.
pub const TREND_Z: f64 = 1.959_963_984_540_054;

/// Equal-width bin of `fraction` in `[0, 1]`: left-closed, with the last
/// bin also closed on the right.
pub fn bin_index(fraction: f64, bins: usize) -> usize {
    ((fraction * bins as f64).floor() as usize).min(bins - 1)
}

/// 1-based ranks, ties receiving the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Pearson correlation of average ranks. None when either side is constant
/// or fewer than two points are given.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Metrics per human-fraction bin for hybrid samples.
pub fn degradation_curve(
    preds: &[usize],
    golds: &[usize],
    fractions: &[f64],
    n_classes: usize,
    bins: usize,
) -> Result<DegradationCurve, EvalError> {
    if bins == 0 {
        return Err(EvalError::Protocol("bins must be >= 1".into()));
    }
    if preds.len() != golds.len() || preds.len() != fractions.len() {
        return Err(EvalError::LengthMismatch {
            preds: preds.len(),
            golds: golds.len().min(fractions.len()),
        });
    }
    if let Some(f) = fractions.iter().find(|f| !(0.0..=1.0).contains(*f)) {
        return Err(EvalError::Protocol(format!("human fraction {f} outside [0, 1]")));
    }
    let mut confusions = vec![Confusion::new(n_classes); bins];
    for ((&p, &g), &f) in preds.iter().zip(golds).zip(fractions) {
        if p >= n_classes || g >= n_classes {
            return Err(EvalError::LabelOutOfRange(p.max(g)));
        }
        confusions[bin_index(f, bins)].counts[g][p] += 1;
    }
    let width = 1.0 / bins as f64;
    let bins: Vec<DegradationBin> = confusions
        .iter()
        .enumerate()
        .map(|(i, c)| DegradationBin {
            lower: i as f64 * width,
            upper: (i + 1) as f64 * width,
            metrics: (c.total() > 0).then(|| MetricRow::from_confusion(c)),
        })
        .collect();
    let (mids, accs): (Vec<f64>, Vec<f64>) = bins
        .iter()
        .filter_map(|b| b.metrics.as_ref().map(|m| ((b.lower + b.upper) / 2.0, m.accuracy)))
        .unzip();
    Ok(DegradationCurve {
        spearman: spearman(&mids, &accs),
        bins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bins_are_left_closed() {
        assert_eq!(bin_index(0.0, 10), 0);
        assert_eq!(bin_index(0.1, 10), 1);
        assert_eq!(bin_index(0.99, 10), 9);
        assert_eq!(bin_index(1.0, 10), 9);
    }

    #[test]
    fn ranks_with_ties() {
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), [3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn spearman_of_reversed_order() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(spearman(&x, &[4.0, 3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman(&x, &[1.0, 1.0, 1.0, 1.0]), None);
    }
}
