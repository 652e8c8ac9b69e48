//! Fuzzy ART over complement-coded inputs.
//!
//! A category is a weight vector `w = [u, v^c]` of length `2d`, read as the
//! hyperrectangle with corners `u` and `v`. Norms of coded vectors are summed
//! feature by feature (`w_i + w_{d+i}`), which makes `|x|` of a coded sample
//! exactly `d` in floating point.

use serde::{Deserialize, Serialize};

use crate::engine::{BitEq, CategoryModel, ModelKind};
use crate::error::{ArtError, Result};

/// Weight vector of one hyperrectangle category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FuzzyCategory {
    pub weights: Vec<f64>,
}

impl BitEq for FuzzyCategory {
    fn bit_eq(&self, other: &Self) -> bool {
        self.weights.bit_eq(&other.weights)
    }
}

impl FuzzyCategory {
    /// Lower corner `u` and upper corner `v` of the box.
    pub fn corners(&self) -> (Vec<f64>, Vec<f64>) {
        let d = self.weights.len() / 2;
        let lower = self.weights[..d].to_vec();
        let upper = self.weights[d..].iter().map(|v| 1.0 - v).collect();
        (lower, upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyParams {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
}

impl Default for FuzzyParams {
    fn default() -> Self {
        FuzzyParams {
            alpha: 0.001,
            beta: 1.0,
            rho: 0.75,
        }
    }
}

impl FuzzyParams {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_beta(self.beta)?;
        check_unit("rho", self.rho)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(ArtError::InvalidParameter(format!("alpha must be > 0, got {alpha}")))
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(ArtError::InvalidParameter(format!(
            "beta must lie in (0, 1], got {beta}"
        )))
    }
}

pub(crate) fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(ArtError::InvalidParameter(format!(
            "{name} must lie in [0, 1], got {v}"
        )))
    }
}

fn check_dims(w: &[f64], x: &[f64]) -> Result<()> {
    if w.len() != x.len() {
        return Err(ArtError::DimensionMismatch {
            expected: w.len(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// L1 norm of a complement-coded vector, folded pairwise.
pub fn coded_norm(v: &[f64]) -> f64 {
    let d = v.len() / 2;
    let mut sum: f64 = v[..d].iter().zip(&v[d..]).map(|(a, b)| a + b).sum();
    if v.len() % 2 == 1 {
        sum += v[v.len() - 1];
    }
    sum
}

/// `|x ∧ w|`, folded the same way as [`coded_norm`].
pub fn fuzzy_and_norm(x: &[f64], w: &[f64]) -> f64 {
    let d = x.len() / 2;
    let mut sum: f64 = (0..d).map(|i| x[i].min(w[i]) + x[d + i].min(w[d + i])).sum();
    if x.len() % 2 == 1 {
        let last = x.len() - 1;
        sum += x[last].min(w[last]);
    }
    sum
}

/// Weber-law choice `|x ∧ w| / (α + |w|)`.
pub fn fa_activation(w: &[f64], x: &[f64], alpha: f64) -> Result<f64> {
    check_dims(w, x)?;
    Ok(fuzzy_and_norm(x, w) / (alpha + coded_norm(w)))
}

/// `|x ∧ w| / |x|`.
pub fn fa_match(w: &[f64], x: &[f64]) -> Result<f64> {
    check_dims(w, x)?;
    let norm = coded_norm(x);
    if norm <= 0.0 {
        return Err(ArtError::ZeroNorm);
    }
    Ok(fuzzy_and_norm(x, w) / norm)
}

/// Exact evaluation of `|x ∧ w| / |x| >= threshold`: the sign of a fused
/// multiply-add is never rounded away, so acceptance implies
/// `|x ∧ w| >= threshold * |x|` in exact arithmetic.
pub fn fa_passes(w: &[f64], x: &[f64], threshold: f64) -> Result<(f64, bool)> {
    check_dims(w, x)?;
    let norm = coded_norm(x);
    if norm <= 0.0 {
        return Err(ArtError::ZeroNorm);
    }
    let overlap = fuzzy_and_norm(x, w);
    Ok((overlap / norm, threshold.mul_add(norm, -overlap) <= 0.0))
}

/// `(1 - β) w + β (x ∧ w)`, never above `w`.
pub fn fa_learn(w: &[f64], x: &[f64], beta: f64) -> Vec<f64> {
    w.iter()
        .zip(x)
        .map(|(&wi, &xi)| {
            let m = xi.min(wi);
            ((1.0 - beta) * wi + beta * m).clamp(m, wi)
        })
        .collect()
}

/// Box size `d - |w|`; `-d` for an uncommitted all-ones vector.
pub fn fa_category_size(w: &[f64]) -> f64 {
    (w.len() / 2) as f64 - coded_norm(w)
}

/// Fuzzy ART with complement coding; defaults `α = 0.001`, `β = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FuzzyArt {
    pub params: FuzzyParams,
}

impl FuzzyArt {
    pub fn new(params: FuzzyParams) -> Result<Self> {
        params.validate()?;
        Ok(FuzzyArt { params })
    }

    pub fn with_rho(rho: f64) -> Result<Self> {
        FuzzyArt::new(FuzzyParams {
            rho,
            ..FuzzyParams::default()
        })
    }
}

impl CategoryModel for FuzzyArt {
    type Category = FuzzyCategory;

    fn kind(&self) -> ModelKind {
        ModelKind::Fuzzy
    }

    fn validate(&self, _dim: usize) -> Result<()> {
        self.params.validate()
    }

    fn activations(&self, categories: &[FuzzyCategory], x: &[f64]) -> Result<Vec<f64>> {
        categories
            .iter()
            .map(|c| fa_activation(&c.weights, x, self.params.alpha))
            .collect()
    }

    fn vigilance(&self) -> f64 {
        self.params.rho
    }

    fn test_match(&self, c: &FuzzyCategory, x: &[f64], threshold: f64) -> Result<(f64, bool)> {
        fa_passes(&c.weights, x, threshold)
    }

    fn learn(&self, c: &mut FuzzyCategory, x: &[f64]) -> Result<()> {
        check_dims(&c.weights, x)?;
        c.weights = fa_learn(&c.weights, x, self.params.beta);
        Ok(())
    }

    /// An uncommitted all-ones node after one learning step.
    fn init_category(&self, x: &[f64]) -> FuzzyCategory {
        let ones = vec![1.0; x.len()];
        FuzzyCategory {
            weights: fa_learn(&ones, x, 1.0),
        }
    }

    fn category_size(&self, c: &FuzzyCategory) -> f64 {
        fa_category_size(&c.weights)
    }
}
