//! Gaussian ART with diagonal covariance. Activations are log posteriors
//! (log likelihood plus log prior, evidence dropped); the match is the
//! unnormalized likelihood, compared in the log domain.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::engine::{BitEq, CategoryModel, ModelKind};
use crate::error::{ArtError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussCategory {
    pub mean: Vec<f64>,
    /// Per-feature variance `σ²`.
    pub variance: Vec<f64>,
    pub count: u64,
}

impl GaussCategory {
    pub fn std_dev(&self) -> Vec<f64> {
        self.variance.iter().map(|v| v.sqrt()).collect()
    }
}

impl BitEq for GaussCategory {
    fn bit_eq(&self, other: &Self) -> bool {
        self.mean.bit_eq(&other.mean) && self.variance.bit_eq(&other.variance) && self.count == other.count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussParams {
    /// Match floor in `(0, 1]`.
    pub rho: f64,
    pub sigma_init: f64,
}

impl GaussParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(ArtError::InvalidParameter(format!(
                "rho must lie in (0, 1], got {}",
                self.rho
            )));
        }
        check_sigma(self.sigma_init)
    }
}

pub(crate) fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_finite() && sigma > 0.0 {
        Ok(())
    } else {
        Err(ArtError::InvalidParameter(format!(
            "sigma_init must be positive, got {sigma}"
        )))
    }
}

/// `-½ Σ (x_i - μ_i)² / σ_i²`, the log of the match value.
pub fn ga_log_match(c: &GaussCategory, x: &[f64]) -> Result<f64> {
    if c.mean.len() != x.len() {
        return Err(ArtError::DimensionMismatch {
            expected: c.mean.len(),
            actual: x.len(),
        });
    }
    let q: f64 = c
        .mean
        .iter()
        .zip(&c.variance)
        .zip(x)
        .map(|((m, v), xi)| (xi - m) * (xi - m) / v)
        .sum();
    let out = -0.5 * q;
    if out.is_nan() {
        return Err(ArtError::NonFiniteLikelihood);
    }
    Ok(out)
}

pub fn ga_match(c: &GaussCategory, x: &[f64]) -> Result<f64> {
    Ok(ga_log_match(c, x)?.exp())
}

/// Log likelihood of the diagonal Gaussian.
pub fn ga_log_likelihood(c: &GaussCategory, x: &[f64]) -> Result<f64> {
    let log_norm: f64 = c.variance.iter().map(|v| (2.0 * PI * v).ln()).sum();
    let out = ga_log_match(c, x)? - 0.5 * log_norm;
    if out.is_finite() {
        Ok(out)
    } else {
        Err(ArtError::NonFiniteLikelihood)
    }
}

/// Log posterior (up to the shared evidence term) of every category.
pub fn ga_activation(categories: &[GaussCategory], x: &[f64]) -> Result<Vec<f64>> {
    let total: u64 = categories.iter().map(|c| c.count).sum();
    let log_total = (total as f64).ln();
    categories
        .iter()
        .map(|c| Ok(ga_log_likelihood(c, x)? + (c.count as f64).ln() - log_total))
        .collect()
}

pub fn ga_learn(c: &GaussCategory, x: &[f64]) -> GaussCategory {
    let count = c.count + 1;
    let rate = 1.0 / count as f64;
    let mean: Vec<f64> = c
        .mean
        .iter()
        .zip(x)
        .map(|(m, xi)| (1.0 - rate) * m + rate * xi)
        .collect();
    let variance = c
        .variance
        .iter()
        .zip(&mean)
        .zip(x)
        .map(|((v, m), xi)| (1.0 - rate) * v + rate * (m - xi) * (m - xi))
        .collect();
    GaussCategory { mean, variance, count }
}

pub fn ga_init(x: &[f64], sigma_init: f64) -> GaussCategory {
    GaussCategory {
        mean: x.to_vec(),
        variance: vec![sigma_init * sigma_init; x.len()],
        count: 1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GaussianArt {
    pub params: GaussParams,
}

impl GaussianArt {
    pub fn new(params: GaussParams) -> Result<Self> {
        params.validate()?;
        Ok(GaussianArt { params })
    }
}

impl CategoryModel for GaussianArt {
    type Category = GaussCategory;

    fn kind(&self) -> ModelKind {
        ModelKind::Gaussian
    }

    fn validate(&self, _dim: usize) -> Result<()> {
        self.params.validate()
    }

    fn activations(&self, categories: &[GaussCategory], x: &[f64]) -> Result<Vec<f64>> {
        ga_activation(categories, x)
    }

    fn vigilance(&self) -> f64 {
        self.params.rho
    }

    fn test_match(&self, c: &GaussCategory, x: &[f64], threshold: f64) -> Result<(f64, bool)> {
        let log_m = ga_log_match(c, x)?;
        let pass = threshold <= 0.0 || log_m >= threshold.ln();
        Ok((log_m.exp(), pass))
    }

    fn learn(&self, c: &mut GaussCategory, x: &[f64]) -> Result<()> {
        *c = ga_learn(c, x);
        Ok(())
    }

    fn init_category(&self, x: &[f64]) -> GaussCategory {
        ga_init(x, self.params.sigma_init)
    }

    /// Geometric mean of the standard deviations.
    fn category_size(&self, c: &GaussCategory) -> f64 {
        let n = c.variance.len() as f64;
        (c.variance.iter().map(|v| v.ln()).sum::<f64>() / (2.0 * n)).exp()
    }
}
