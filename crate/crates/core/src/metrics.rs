use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{ArtError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub metric: &'static str,
    pub value: f64,
    /// Number of samples compared.
    pub support: usize,
}

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(ArtError::LabelCount { labels: a, rows: b });
    }
    if a == 0 {
        return Err(ArtError::EmptyDataset);
    }
    Ok(())
}

fn pairs(n: u64) -> f64 {
    (n * n.saturating_sub(1) / 2) as f64
}

/// Pair-counting adjusted Rand index. Any hashable label type works, so
/// `Option<usize>` treats all unassigned samples as one extra cluster.
/// Degenerate cases where the expected index equals its maximum return 1.
pub fn adjusted_rand_index<A: Eq + Hash, B: Eq + Hash>(a: &[A], b: &[B]) -> Result<f64> {
    check_lengths(a.len(), b.len())?;
    let mut table: HashMap<(&A, &B), u64> = HashMap::new();
    let mut rows: HashMap<&A, u64> = HashMap::new();
    let mut cols: HashMap<&B, u64> = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        *table.entry((x, y)).or_default() += 1;
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
    }
    let index: f64 = table.values().map(|&n| pairs(n)).sum();
    let sum_a: f64 = rows.values().map(|&n| pairs(n)).sum();
    let sum_b: f64 = cols.values().map(|&n| pairs(n)).sum();
    let total = pairs(a.len() as u64);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sum_a * sum_b / total;
    let max_index = 0.5 * (sum_a + sum_b);
    let denom = max_index - expected;
    if denom == 0.0 {
        return Ok(1.0);
    }
    Ok((index - expected) / denom)
}

/// Fraction of positions where the prediction is assigned and equal to truth.
pub fn accuracy<T: PartialEq>(pred: &[Option<T>], truth: &[T]) -> Result<f64> {
    check_lengths(pred.len(), truth.len())?;
    let hits = pred.iter().zip(truth).filter(|(p, t)| p.as_ref() == Some(*t)).count();
    Ok(hits as f64 / truth.len() as f64)
}

pub fn ari_report<A: Eq + Hash, B: Eq + Hash>(a: &[A], b: &[B]) -> Result<MetricReport> {
    Ok(MetricReport {
        metric: "ari",
        value: adjusted_rand_index(a, b)?,
        support: a.len(),
    })
}

pub fn accuracy_report<T: PartialEq>(pred: &[Option<T>], truth: &[T]) -> Result<MetricReport> {
    Ok(MetricReport {
        metric: "accuracy",
        value: accuracy(pred, truth)?,
        support: truth.len(),
    })
}
