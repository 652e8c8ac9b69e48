//! Dual-vigilance Fuzzy ART: an upper vigilance for quantization and a lower
//! one for cluster membership. A sample that clears only the lower bound
//! founds a new category inside the tested category's cluster.

use serde::{Deserialize, Serialize};

use crate::engine::{CategoryModel, ModelKind, Resonance, Verdict};
use crate::error::{ArtError, Result};
use crate::models::fuzzy::{
    check_alpha, check_beta, check_unit, fa_activation, fa_category_size, fa_learn, fa_passes, FuzzyCategory,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DvfaParams {
    pub alpha: f64,
    pub beta: f64,
    pub rho_ub: f64,
    pub rho_lb: f64,
}

impl DvfaParams {
    pub fn new(rho_ub: f64, rho_lb: f64) -> Self {
        DvfaParams {
            alpha: 0.001,
            beta: 1.0,
            rho_ub,
            rho_lb,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_beta(self.beta)?;
        check_unit("rho_ub", self.rho_ub)?;
        check_unit("rho_lb", self.rho_lb)?;
        if self.rho_lb > self.rho_ub {
            return Err(ArtError::InvalidParameter(format!(
                "rho_lb ({}) must not exceed rho_ub ({})",
                self.rho_lb, self.rho_ub
            )));
        }
        Ok(())
    }
}

/// Three-way verdict for one tested category.
pub fn dvfa_resonance(c: &FuzzyCategory, x: &[f64], params: &DvfaParams) -> Result<Resonance> {
    params.validate()?;
    let (match_value, upper) = fa_passes(&c.weights, x, params.rho_ub)?;
    let verdict = if upper {
        Verdict::Accept
    } else if fa_passes(&c.weights, x, params.rho_lb)?.1 {
        Verdict::AcceptAsNewLinked
    } else {
        Verdict::Reject
    };
    Ok(Resonance { verdict, match_value })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dvfa {
    pub params: DvfaParams,
}

impl Dvfa {
    pub fn new(params: DvfaParams) -> Result<Self> {
        params.validate()?;
        Ok(Dvfa { params })
    }
}

impl CategoryModel for Dvfa {
    type Category = FuzzyCategory;

    fn kind(&self) -> ModelKind {
        ModelKind::Dvfa
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
        self.params.rho_ub
    }

    fn test_match(&self, c: &FuzzyCategory, x: &[f64], threshold: f64) -> Result<(f64, bool)> {
        fa_passes(&c.weights, x, threshold)
    }

    fn resonance(&self, c: &FuzzyCategory, x: &[f64]) -> Result<Resonance> {
        dvfa_resonance(c, x, &self.params)
    }

    fn learn(&self, c: &mut FuzzyCategory, x: &[f64]) -> Result<()> {
        c.weights = fa_learn(&c.weights, x, self.params.beta);
        Ok(())
    }

    /// Point box `x ∧ 1 = x`.
    fn init_category(&self, x: &[f64]) -> FuzzyCategory {
        FuzzyCategory {
            weights: fa_learn(&vec![1.0; x.len()], x, 1.0),
        }
    }

    fn category_size(&self, c: &FuzzyCategory) -> f64 {
        fa_category_size(&c.weights)
    }
}
