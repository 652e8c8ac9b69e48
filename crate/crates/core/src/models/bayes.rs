//! Bayesian ART: full-covariance Gaussian categories, posterior activation and
//! a hyper-volume (determinant) vigilance bound.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::engine::{BitEq, CategoryModel, MatchDirection, ModelKind};
use crate::error::{ArtError, Result};
use crate::models::gaussian::check_sigma;

/// Lower bound kept on every covariance diagonal entry.
pub const VARIANCE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BayesCategory {
    pub mean: Vec<f64>,
    /// Row-major `d x d` covariance.
    pub covariance: Vec<Vec<f64>>,
    pub count: u64,
}

impl BitEq for BayesCategory {
    fn bit_eq(&self, other: &Self) -> bool {
        self.mean.bit_eq(&other.mean) && self.covariance.bit_eq(&other.covariance) && self.count == other.count
    }
}

impl BayesCategory {
    fn matrix(&self) -> DMatrix<f64> {
        let d = self.mean.len();
        DMatrix::from_fn(d, d, |i, j| self.covariance[i][j])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BayesParams {
    /// Largest admissible `det Σ`.
    pub rho: f64,
    pub sigma_init: f64,
    #[serde(default)]
    pub diagonal: bool,
}

impl BayesParams {
    /// `σ_init = sqrt(0.01 ρ^{1/d})`, well inside the admissible bound.
    pub fn with_default_sigma(rho: f64, dim: usize) -> Self {
        BayesParams {
            rho,
            sigma_init: (0.01 * rho.powf(1.0 / dim.max(1) as f64)).sqrt(),
            diagonal: false,
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(ArtError::InvalidParameter(format!(
                "rho must be positive, got {}",
                self.rho
            )));
        }
        check_sigma(self.sigma_init)?;
        let bound = 0.1 * self.rho.powf(1.0 / dim.max(1) as f64);
        if self.sigma_init * self.sigma_init > bound {
            return Err(ArtError::InvalidParameter(format!(
                "sigma_init^2 = {} exceeds 0.1 * rho^(1/d) = {bound}",
                self.sigma_init * self.sigma_init
            )));
        }
        Ok(())
    }
}

fn check_dims(c: &BayesCategory, x: &[f64]) -> Result<()> {
    if c.mean.len() != x.len() {
        return Err(ArtError::DimensionMismatch {
            expected: c.mean.len(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// Log density of `N(μ, Σ)` at `x`, through a Cholesky factor.
pub fn ba_log_likelihood(c: &BayesCategory, x: &[f64]) -> Result<f64> {
    check_dims(c, x)?;
    let chol = c.matrix().cholesky().ok_or(ArtError::SingularCovariance)?;
    let diff = DVector::from_iterator(x.len(), x.iter().zip(&c.mean).map(|(a, m)| a - m));
    let z = chol
        .l_dirty()
        .solve_lower_triangular(&diff)
        .ok_or(ArtError::SingularCovariance)?;
    let log_det: f64 = 2.0 * chol.l_dirty().diagonal().iter().map(|v| v.ln()).sum::<f64>();
    let d = x.len() as f64;
    let out = -0.5 * (z.norm_squared() + log_det + d * (2.0 * PI).ln());
    if out.is_finite() {
        Ok(out)
    } else {
        Err(ArtError::NonFiniteLikelihood)
    }
}

/// Log posteriors, normalized so their exponentials sum to one.
pub fn ba_log_posteriors(categories: &[BayesCategory], x: &[f64]) -> Result<Vec<f64>> {
    let total: u64 = categories.iter().map(|c| c.count).sum();
    let log_total = (total as f64).ln();
    let joint = categories
        .iter()
        .map(|c| Ok(ba_log_likelihood(c, x)? + (c.count as f64).ln() - log_total))
        .collect::<Result<Vec<f64>>>()?;
    let peak = joint.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_evidence = peak + joint.iter().map(|v| (v - peak).exp()).sum::<f64>().ln();
    Ok(joint.into_iter().map(|v| v - log_evidence).collect())
}

/// Posterior probability of every category.
pub fn ba_activation(categories: &[BayesCategory], x: &[f64]) -> Result<Vec<f64>> {
    Ok(ba_log_posteriors(categories, x)?.into_iter().map(f64::exp).collect())
}

/// `det Σ`, clamped at zero.
pub fn ba_match(c: &BayesCategory) -> f64 {
    c.matrix().determinant().max(0.0)
}

pub fn ba_learn(c: &BayesCategory, x: &[f64], diagonal: bool) -> BayesCategory {
    let count = c.count + 1;
    let rate = 1.0 / count as f64;
    let keep = c.count as f64 / count as f64;
    let mean: Vec<f64> = c
        .mean
        .iter()
        .zip(x)
        .map(|(m, xi)| (1.0 - rate) * m + rate * xi)
        .collect();
    let diff: Vec<f64> = x.iter().zip(&mean).map(|(a, m)| a - m).collect();
    let d = mean.len();
    let covariance = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        (keep * c.covariance[i][i] + rate * diff[i] * diff[i]).max(VARIANCE_FLOOR)
                    } else if diagonal {
                        0.0
                    } else {
                        keep * c.covariance[i][j] + rate * diff[i] * diff[j]
                    }
                })
                .collect()
        })
        .collect();
    BayesCategory {
        mean,
        covariance,
        count,
    }
}

pub fn ba_init(x: &[f64], sigma_init: f64) -> BayesCategory {
    let d = x.len();
    let covariance = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { sigma_init * sigma_init } else { 0.0 })
                .collect()
        })
        .collect();
    BayesCategory {
        mean: x.to_vec(),
        covariance,
        count: 1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BayesianArt {
    pub params: BayesParams,
}

impl BayesianArt {
    pub fn new(params: BayesParams, dim: usize) -> Result<Self> {
        params.validate(dim)?;
        Ok(BayesianArt { params })
    }
}

impl CategoryModel for BayesianArt {
    type Category = BayesCategory;

    fn kind(&self) -> ModelKind {
        ModelKind::Bayes
    }

    fn validate(&self, dim: usize) -> Result<()> {
        self.params.validate(dim)
    }

    /// Log posteriors; ranking is unchanged by the monotone transform and
    /// stays resolvable where linear posteriors would underflow.
    fn activations(&self, categories: &[BayesCategory], x: &[f64]) -> Result<Vec<f64>> {
        ba_log_posteriors(categories, x)
    }

    fn vigilance(&self) -> f64 {
        self.params.rho
    }

    fn match_direction(&self) -> MatchDirection {
        MatchDirection::AtMost
    }

    fn test_match(&self, c: &BayesCategory, x: &[f64], threshold: f64) -> Result<(f64, bool)> {
        check_dims(c, x)?;
        let m = ba_match(c);
        Ok((m, m <= threshold))
    }

    fn learn(&self, c: &mut BayesCategory, x: &[f64]) -> Result<()> {
        check_dims(c, x)?;
        *c = ba_learn(c, x, self.params.diagonal);
        Ok(())
    }

    fn init_category(&self, x: &[f64]) -> BayesCategory {
        ba_init(x, self.params.sigma_init)
    }

    fn category_size(&self, c: &BayesCategory) -> f64 {
        ba_match(c)
    }
}
