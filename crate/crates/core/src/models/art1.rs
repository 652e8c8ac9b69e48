//! ART 1 for binary inputs.
//!
//! One uncommitted node always takes part in the competition; committed
//! categories ranked below it are never tested.

use serde::{Deserialize, Serialize};

use crate::engine::{BitEq, CategoryModel, ModelKind};
use crate::error::{ArtError, Result};
use crate::models::fuzzy::check_unit;

/// Binary top-down template and its normalized bottom-up copy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Art1Category {
    pub top_down: Vec<f64>,
    pub bottom_up: Vec<f64>,
}

impl BitEq for Art1Category {
    fn bit_eq(&self, other: &Self) -> bool {
        self.top_down.bit_eq(&other.top_down) && self.bottom_up.bit_eq(&other.bottom_up)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Art1Params {
    /// Bias toward uncommitted nodes; must exceed 1.
    #[serde(rename = "L")]
    pub l: f64,
    pub rho: f64,
}

impl Default for Art1Params {
    fn default() -> Self {
        Art1Params { l: 2.0, rho: 0.75 }
    }
}

fn l1(v: &[f64]) -> f64 {
    v.iter().sum()
}

/// `L / (L - 1 + |w_td|) * w_td`.
pub fn art1_bottom_up(top_down: &[f64], l: f64) -> Vec<f64> {
    let scale = l / (l - 1.0 + l1(top_down));
    top_down.iter().map(|t| scale * t).collect()
}

/// `<w_bu, x>`.
pub fn art1_activation(c: &Art1Category, x: &[f64]) -> f64 {
    c.bottom_up.iter().zip(x).map(|(w, xi)| w * xi).sum()
}

/// `|x ∩ w_td| / |x|`.
pub fn art1_match(c: &Art1Category, x: &[f64]) -> Result<f64> {
    let norm = l1(x);
    if norm <= 0.0 {
        return Err(ArtError::ZeroNorm);
    }
    let overlap: f64 = c.top_down.iter().zip(x).map(|(t, xi)| t.min(*xi)).sum();
    Ok(overlap / norm)
}

pub fn art1_learn(c: &Art1Category, x: &[f64], l: f64) -> Art1Category {
    let top_down: Vec<f64> = c.top_down.iter().zip(x).map(|(t, xi)| t.min(*xi)).collect();
    let bottom_up = art1_bottom_up(&top_down, l);
    Art1Category { top_down, bottom_up }
}

pub fn art1_uncommitted(d: usize, l: f64) -> Art1Category {
    let top_down = vec![1.0; d];
    let bottom_up = art1_bottom_up(&top_down, l);
    Art1Category { top_down, bottom_up }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Art1 {
    pub params: Art1Params,
}

impl Art1 {
    pub fn new(params: Art1Params) -> Result<Self> {
        let model = Art1 { params };
        model.check_params()?;
        Ok(model)
    }

    fn check_params(&self) -> Result<()> {
        if !(self.params.l.is_finite() && self.params.l > 1.0) {
            return Err(ArtError::InvalidParameter(format!(
                "L must exceed 1, got {}",
                self.params.l
            )));
        }
        check_unit("rho", self.params.rho)
    }
}

impl CategoryModel for Art1 {
    type Category = Art1Category;

    fn kind(&self) -> ModelKind {
        ModelKind::Art1
    }

    fn validate(&self, _dim: usize) -> Result<()> {
        self.check_params()
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if let Some(index) = x.iter().position(|&v| v != 0.0 && v != 1.0) {
            return Err(ArtError::NonBinary { index, value: x[index] });
        }
        if l1(x) == 0.0 {
            return Err(ArtError::ZeroNorm);
        }
        Ok(())
    }

    fn activations(&self, categories: &[Art1Category], x: &[f64]) -> Result<Vec<f64>> {
        Ok(categories.iter().map(|c| art1_activation(c, x)).collect())
    }

    fn uncommitted_activation(&self, x: &[f64]) -> Option<f64> {
        Some(art1_activation(&art1_uncommitted(x.len(), self.params.l), x))
    }

    fn vigilance(&self) -> f64 {
        self.params.rho
    }

    fn test_match(&self, c: &Art1Category, x: &[f64], threshold: f64) -> Result<(f64, bool)> {
        let m = art1_match(c, x)?;
        Ok((m, m >= threshold))
    }

    fn learn(&self, c: &mut Art1Category, x: &[f64]) -> Result<()> {
        *c = art1_learn(c, x, self.params.l);
        Ok(())
    }

    fn init_category(&self, x: &[f64]) -> Art1Category {
        art1_learn(&art1_uncommitted(x.len(), self.params.l), x, self.params.l)
    }

    fn category_size(&self, c: &Art1Category) -> f64 {
        l1(&c.top_down)
    }
}
