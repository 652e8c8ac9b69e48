//! Ellipsoid ART. Like hypersphere ART, but the category is an ellipse with a
//! fixed axis ratio `μ` whose major-axis direction is set by the second sample
//! the category encodes and never changes afterwards.

use serde::{Deserialize, Serialize};

use crate::engine::{BitEq, CategoryModel, ModelKind};
use crate::error::{ArtError, Result};
use crate::models::fuzzy::{check_alpha, check_beta, check_unit};
use crate::models::hypersphere::{check_rbar, euclidean, sphere_update, SphereCategory};
use crate::numeric::sum_within;

/// Squared-root argument below this is treated as rounding noise.
const DISTANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipsoidCategory {
    pub centroid: Vec<f64>,
    /// Unit major-axis direction, or all zeros until it is set.
    pub direction: Vec<f64>,
    pub radius: f64,
}

impl EllipsoidCategory {
    pub fn has_direction(&self) -> bool {
        self.direction.iter().any(|&v| v != 0.0)
    }
}

impl BitEq for EllipsoidCategory {
    fn bit_eq(&self, other: &Self) -> bool {
        self.centroid.bit_eq(&other.centroid)
            && self.direction.bit_eq(&other.direction)
            && self.radius.bit_eq(&other.radius)
    }
}

/// Centroid used when the direction is fixed from the second sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionAnchor {
    /// The centroid after the update that encodes the second sample.
    #[default]
    PostUpdate,
    /// The centroid before that update.
    PreUpdate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipsoidParams {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    /// Ratio between minor and major axis, in `(0, 1]`.
    pub mu: f64,
    pub rbar: Option<f64>,
    #[serde(default)]
    pub anchor: DirectionAnchor,
}

impl EllipsoidParams {
    pub fn new(rho: f64, mu: f64, rbar: Option<f64>) -> Self {
        EllipsoidParams {
            alpha: 0.001,
            beta: 1.0,
            rho,
            mu,
            rbar,
            anchor: DirectionAnchor::PostUpdate,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_beta(self.beta)?;
        check_unit("rho", self.rho)?;
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            return Err(ArtError::InvalidParameter(format!(
                "mu must lie in (0, 1], got {}",
                self.mu
            )));
        }
        check_rbar(self.rbar)
    }
}

/// Mahalanobis-like distance of `x` from the ellipse centre.
pub fn ea_distance(c: &EllipsoidCategory, x: &[f64], mu: f64) -> Result<f64> {
    if c.centroid.len() != x.len() {
        return Err(ArtError::DimensionMismatch {
            expected: c.centroid.len(),
            actual: x.len(),
        });
    }
    if !c.has_direction() {
        return Ok(euclidean(x, &c.centroid));
    }
    let mut sq = 0.0;
    let mut proj = 0.0;
    for ((xi, mi), di) in x.iter().zip(&c.centroid).zip(&c.direction) {
        let diff = xi - mi;
        sq += diff * diff;
        proj += di * diff;
    }
    let mut inner = sq - (1.0 - mu * mu) * proj * proj;
    if inner < 0.0 {
        if inner < -DISTANCE_TOLERANCE {
            return Err(ArtError::NegativeDistance(inner));
        }
        inner = 0.0;
    }
    Ok(inner.sqrt() / mu)
}

/// `(R̄ - R - max(R, dis)) / (R̄ - 2R + α)`.
pub fn ea_activation(c: &EllipsoidCategory, x: &[f64], params: &EllipsoidParams, rbar: f64) -> Result<f64> {
    let dis = ea_distance(c, x, params.mu)?;
    let denom = rbar - 2.0 * c.radius + params.alpha;
    if denom <= 0.0 {
        return Err(ArtError::RadialExtent { rbar, radius: c.radius });
    }
    Ok((rbar - c.radius - c.radius.max(dis)) / denom)
}

/// `1 - (R + max(R, dis)) / R̄`.
pub fn ea_match(c: &EllipsoidCategory, x: &[f64], mu: f64, rbar: f64) -> Result<f64> {
    let dis = ea_distance(c, x, mu)?;
    Ok(1.0 - (c.radius + c.radius.max(dis)) / rbar)
}

pub fn ea_learn(c: &EllipsoidCategory, x: &[f64], params: &EllipsoidParams) -> Result<EllipsoidCategory> {
    let dis = ea_distance(c, x, params.mu)?;
    let sphere = SphereCategory {
        centroid: c.centroid.clone(),
        radius: c.radius,
    };
    let moved = sphere_update(&sphere, x, dis, params.beta);
    let direction = if c.has_direction() {
        c.direction.clone()
    } else {
        let anchor = match params.anchor {
            DirectionAnchor::PostUpdate => &moved.centroid,
            DirectionAnchor::PreUpdate => &c.centroid,
        };
        unit_direction(x, anchor).unwrap_or_else(|| c.direction.clone())
    };
    Ok(EllipsoidCategory {
        centroid: moved.centroid,
        direction,
        radius: moved.radius,
    })
}

fn unit_direction(x: &[f64], from: &[f64]) -> Option<Vec<f64>> {
    let len = euclidean(x, from);
    (len > 0.0).then(|| x.iter().zip(from).map(|(a, b)| (a - b) / len).collect())
}

/// `(1/μ)` times the largest pairwise distance, or `(1/μ)√d` without one.
pub fn default_rbar(data: &[Vec<f64>], mu: f64) -> f64 {
    let mut widest: f64 = 0.0;
    for (i, a) in data.iter().enumerate() {
        for b in &data[i + 1..] {
            widest = widest.max(euclidean(a, b));
        }
    }
    if widest == 0.0 {
        widest = (data.first().map_or(1, Vec::len) as f64).sqrt();
    }
    widest / mu
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EllipsoidArt {
    pub params: EllipsoidParams,
}

impl EllipsoidArt {
    pub fn new(params: EllipsoidParams) -> Result<Self> {
        params.validate()?;
        Ok(EllipsoidArt { params })
    }

    fn rbar(&self) -> Result<f64> {
        self.params.rbar.ok_or(ArtError::RadialExtentUnset)
    }
}

impl CategoryModel for EllipsoidArt {
    type Category = EllipsoidCategory;

    fn kind(&self) -> ModelKind {
        ModelKind::Ellipsoid
    }

    fn validate(&self, _dim: usize) -> Result<()> {
        self.params.validate()
    }

    fn prepare(&mut self, data: &[Vec<f64>]) -> Result<()> {
        if self.params.rbar.is_none() {
            self.params.rbar = Some(default_rbar(data, self.params.mu));
        }
        Ok(())
    }

    fn activations(&self, categories: &[EllipsoidCategory], x: &[f64]) -> Result<Vec<f64>> {
        let rbar = self.rbar()?;
        categories
            .iter()
            .map(|c| ea_activation(c, x, &self.params, rbar))
            .collect()
    }

    fn vigilance(&self) -> f64 {
        self.params.rho
    }

    fn test_match(&self, c: &EllipsoidCategory, x: &[f64], threshold: f64) -> Result<(f64, bool)> {
        let rbar = self.rbar()?;
        let dis = ea_distance(c, x, self.params.mu)?;
        let m = 1.0 - (c.radius + c.radius.max(dis)) / rbar;
        Ok((m, sum_within(&[c.radius, c.radius.max(dis)], rbar, threshold)))
    }

    fn learn(&self, c: &mut EllipsoidCategory, x: &[f64]) -> Result<()> {
        *c = ea_learn(c, x, &self.params)?;
        Ok(())
    }

    fn init_category(&self, x: &[f64]) -> EllipsoidCategory {
        EllipsoidCategory {
            centroid: x.to_vec(),
            direction: vec![0.0; x.len()],
            radius: 0.0,
        }
    }

    fn category_size(&self, c: &EllipsoidCategory) -> f64 {
        c.radius
    }
}
