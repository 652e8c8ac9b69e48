//! Hypersphere ART: categories are balls (centroid, radius) in the raw
//! input space, bounded by the radial extent `R̄`.

use serde::{Deserialize, Serialize};

use crate::engine::{BitEq, CategoryModel, ModelKind};
use crate::error::{ArtError, Result};
use crate::models::fuzzy::{check_alpha, check_beta, check_unit};
use crate::numeric::sum_within;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereCategory {
    pub centroid: Vec<f64>,
    pub radius: f64,
}

impl BitEq for SphereCategory {
    fn bit_eq(&self, other: &Self) -> bool {
        self.centroid.bit_eq(&other.centroid) && self.radius.bit_eq(&other.radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereParams {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    /// Radial extent. `None` until set explicitly or derived from a batch.
    pub rbar: Option<f64>,
}

impl SphereParams {
    pub fn new(rho: f64, rbar: Option<f64>) -> Self {
        SphereParams {
            alpha: 0.001,
            beta: 1.0,
            rho,
            rbar,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_beta(self.beta)?;
        check_unit("rho", self.rho)?;
        check_rbar(self.rbar)
    }

    pub(crate) fn rbar(&self) -> Result<f64> {
        self.rbar.ok_or(ArtError::RadialExtentUnset)
    }
}

pub(crate) fn check_rbar(rbar: Option<f64>) -> Result<()> {
    match rbar {
        Some(r) if !(r.is_finite() && r > 0.0) => {
            Err(ArtError::InvalidParameter(format!("rbar must be positive, got {r}")))
        }
        _ => Ok(()),
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

fn check_dims(c: &[f64], x: &[f64]) -> Result<()> {
    if c.len() != x.len() {
        return Err(ArtError::DimensionMismatch {
            expected: c.len(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// `(R̄ - max(R, |x - m|)) / (R̄ - R + α)`.
pub fn ha_activation(c: &SphereCategory, x: &[f64], alpha: f64, rbar: f64) -> Result<f64> {
    check_dims(&c.centroid, x)?;
    if rbar <= c.radius {
        return Err(ArtError::RadialExtent { rbar, radius: c.radius });
    }
    let reach = c.radius.max(euclidean(x, &c.centroid));
    Ok((rbar - reach) / (rbar - c.radius + alpha))
}

/// `1 - max(R, |x - m|) / R̄`.
pub fn ha_match(c: &SphereCategory, x: &[f64], rbar: f64) -> Result<f64> {
    check_dims(&c.centroid, x)?;
    Ok(1.0 - c.radius.max(euclidean(x, &c.centroid)) / rbar)
}

/// Radius grows toward the enclosing ball; the centroid moves toward `x`
/// only when `x` lies outside the sphere.
pub fn ha_learn(c: &SphereCategory, x: &[f64], beta: f64) -> SphereCategory {
    let dist = euclidean(x, &c.centroid);
    sphere_update(c, x, dist, beta)
}

pub(crate) fn sphere_update(c: &SphereCategory, x: &[f64], dist: f64, beta: f64) -> SphereCategory {
    let radius = c.radius + beta / 2.0 * (c.radius.max(dist) - c.radius);
    // dist = 0 leaves the centroid in place
    let pull = if dist > 0.0 {
        1.0 - c.radius.min(dist) / dist
    } else {
        0.0
    };
    let centroid = c
        .centroid
        .iter()
        .zip(x)
        .map(|(m, xi)| m + beta / 2.0 * (xi - m) * pull)
        .collect();
    SphereCategory { centroid, radius }
}

/// Half the largest pairwise distance. Errors when it is undefined or zero.
pub fn ha_rmax(data: &[Vec<f64>]) -> Result<f64> {
    if data.len() < 2 {
        return Err(ArtError::InvalidParameter("need at least two samples".into()));
    }
    let mut widest: f64 = 0.0;
    for (i, a) in data.iter().enumerate() {
        for b in &data[i + 1..] {
            widest = widest.max(euclidean(a, b));
        }
    }
    if widest > 0.0 {
        Ok(widest / 2.0)
    } else {
        Err(ArtError::InvalidParameter("all samples coincide".into()))
    }
}

/// `ha_rmax`, falling back to half the unit-cube diagonal.
pub fn default_rbar(data: &[Vec<f64>]) -> f64 {
    let d = data.first().map_or(1, Vec::len);
    ha_rmax(data).unwrap_or_else(|_| (d as f64).sqrt() / 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HypersphereArt {
    pub params: SphereParams,
}

impl HypersphereArt {
    pub fn new(params: SphereParams) -> Result<Self> {
        params.validate()?;
        Ok(HypersphereArt { params })
    }
}

impl CategoryModel for HypersphereArt {
    type Category = SphereCategory;

    fn kind(&self) -> ModelKind {
        ModelKind::Hypersphere
    }

    fn validate(&self, _dim: usize) -> Result<()> {
        self.params.validate()
    }

    fn prepare(&mut self, data: &[Vec<f64>]) -> Result<()> {
        if self.params.rbar.is_none() {
            self.params.rbar = Some(default_rbar(data));
        }
        Ok(())
    }

    fn activations(&self, categories: &[SphereCategory], x: &[f64]) -> Result<Vec<f64>> {
        let rbar = self.params.rbar()?;
        categories
            .iter()
            .map(|c| ha_activation(c, x, self.params.alpha, rbar))
            .collect()
    }

    fn vigilance(&self) -> f64 {
        self.params.rho
    }

    fn test_match(&self, c: &SphereCategory, x: &[f64], threshold: f64) -> Result<(f64, bool)> {
        let rbar = self.params.rbar()?;
        let m = ha_match(c, x, rbar)?;
        let reach = c.radius.max(euclidean(x, &c.centroid));
        Ok((m, sum_within(&[reach], rbar, threshold)))
    }

    fn learn(&self, c: &mut SphereCategory, x: &[f64]) -> Result<()> {
        *c = ha_learn(c, x, self.params.beta);
        Ok(())
    }

    fn init_category(&self, x: &[f64]) -> SphereCategory {
        SphereCategory {
            centroid: x.to_vec(),
            radius: 0.0,
        }
    }

    fn category_size(&self, c: &SphereCategory) -> f64 {
        c.radius
    }
}
