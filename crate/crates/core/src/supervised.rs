//! Simplified ARTMAP over any unsupervised category model.
//!
//! Each committed category maps permanently to one class. A resonating
//! category with the wrong class triggers match tracking: the vigilance is
//! moved past its match value, the category is inhibited for the rest of the
//! presentation, and the search continues. Vigilance resets before every
//! sample.

use serde::{Deserialize, Serialize};

use crate::engine::{
    argmax, check_dataset, presentation_order, rank, ArtNetwork, CategoryModel, MatchDirection, ModelKind, Verdict,
};
use crate::error::{ArtError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchTracking {
    /// Vigilance moves just past the offending match value.
    #[default]
    Plus,
    /// Vigilance moves just short of it.
    Minus,
}

impl MatchTracking {
    pub fn default_epsilon(self) -> f64 {
        match self {
            MatchTracking::Plus => 0.001,
            MatchTracking::Minus => -0.001,
        }
    }
}

/// Outcome of one supervised presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct SfamStep {
    pub category: usize,
    pub created: bool,
    /// Categories that resonated with the wrong class.
    pub resets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "M: CategoryModel")]
pub struct Sfam<M: CategoryModel> {
    network: ArtNetwork<M>,
    /// Class id of every category.
    map: Vec<usize>,
    mode: MatchTracking,
    epsilon: f64,
}

impl<M: CategoryModel> Sfam<M> {
    pub fn new(network: ArtNetwork<M>, mode: MatchTracking, epsilon: f64) -> Result<Self> {
        check_inner(network.model().kind())?;
        check_epsilon(mode, epsilon)?;
        if !network.is_empty() {
            return Err(ArtError::InvalidParameter("inner network must start empty".into()));
        }
        Ok(Sfam {
            network,
            map: Vec::new(),
            mode,
            epsilon,
        })
    }

    pub fn network(&self) -> &ArtNetwork<M> {
        &self.network
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn mode(&self) -> MatchTracking {
        self.mode
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn train_step(&mut self, x: &[f64], label: usize) -> Result<SfamStep> {
        let x = self.network.encode(x)?;
        self.network.tick();
        let mut resets = Vec::new();
        let direction = self.network.model().match_direction();
        let mut threshold = self.network.model().vigilance();
        // Best match among categories inhibited so far; later candidates must beat it.
        let mut to_beat: Option<f64> = None;
        let (model, categories, counts) = self.network.parts_mut();
        if !categories.is_empty() {
            let activations = model.activations(categories, &x)?;
            let uncommitted = model.uncommitted_activation(&x);
            for j in rank(&activations) {
                if uncommitted.is_some_and(|t| activations[j] < t) {
                    break;
                }
                let (match_value, pass) = model.test_match(&categories[j], &x, threshold)?;
                let beats = to_beat.is_none_or(|m| match direction {
                    MatchDirection::AtLeast => match_value > m,
                    MatchDirection::AtMost => match_value < m,
                });
                if !(pass && beats) {
                    continue;
                }
                if self.map[j] == label {
                    model.learn(&mut categories[j], &x)?;
                    counts[j] += 1;
                    return Ok(SfamStep {
                        category: j,
                        created: false,
                        resets,
                    });
                }
                resets.push(j);
                to_beat = Some(match_value);
                threshold = tracked(self.mode, self.epsilon, match_value, direction);
            }
        }
        let category = self.network.push_category(&x);
        self.map.push(label);
        Ok(SfamStep {
            category,
            created: true,
            resets,
        })
    }

    /// Class of the highest-activation category. With `strict`, the class of
    /// the first category that passes the baseline vigilance, if any.
    pub fn predict(&self, x: &[f64], strict: bool) -> Result<Option<usize>> {
        if self.network.is_empty() {
            return Err(ArtError::Untrained);
        }
        let x = self.network.encode(x)?;
        let model = self.network.model();
        let categories = self.network.categories();
        let activations = model.activations(categories, &x)?;
        if !strict {
            return Ok(argmax(&activations).map(|j| self.map[j]));
        }
        let uncommitted = model.uncommitted_activation(&x);
        for j in rank(&activations) {
            if uncommitted.is_some_and(|t| activations[j] < t) {
                break;
            }
            if model.resonance(&categories[j], &x)?.verdict == Verdict::Accept {
                return Ok(Some(self.map[j]));
            }
        }
        Ok(None)
    }

    pub fn same_ltm(&self, other: &Self) -> bool {
        self.network.same_ltm(&other.network) && self.map == other.map
    }

    pub fn validate_state(&self) -> Result<()> {
        check_inner(self.network.model().kind())?;
        check_epsilon(self.mode, self.epsilon)?;
        self.network.validate_state()?;
        if self.map.len() != self.network.len() {
            return Err(ArtError::InvalidParameter(
                "map field and category list differ in length".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn prepare(&mut self, data: &[Vec<f64>]) -> Result<()> {
        let dim = self.network.input_dim();
        self.network.model_mut().prepare(data)?;
        self.network.model().validate(dim)
    }
}

/// Vigilance after a wrong-class resonance with match value `match_value`.
fn tracked(mode: MatchTracking, epsilon: f64, match_value: f64, direction: MatchDirection) -> f64 {
    let shift = match mode {
        MatchTracking::Plus => epsilon,
        MatchTracking::Minus => -epsilon.abs(),
    };
    match direction {
        MatchDirection::AtLeast => match_value + shift,
        MatchDirection::AtMost => match_value - shift,
    }
}

fn check_inner(kind: ModelKind) -> Result<()> {
    match kind {
        ModelKind::Dvfa | ModelKind::Topoart => Err(ArtError::UnsupportedInner(kind.to_string())),
        _ => Ok(()),
    }
}

fn check_epsilon(mode: MatchTracking, epsilon: f64) -> Result<()> {
    let ok = match mode {
        MatchTracking::Plus => epsilon > 0.0 && epsilon < 1.0,
        MatchTracking::Minus => epsilon.is_finite() && epsilon.abs() < 1.0,
    };
    if ok {
        Ok(())
    } else {
        Err(ArtError::InvalidParameter(format!(
            "epsilon {epsilon} is invalid for {mode:?} match tracking"
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupervisedReport {
    pub epochs_run: usize,
    pub converged: bool,
    /// Categories created during the final epoch.
    pub created_last_epoch: usize,
}

/// Epoch driver: repeats passes until an epoch changes neither weights,
/// map field nor category count.
pub fn fit_supervised<M: CategoryModel>(
    sfam: &mut Sfam<M>,
    data: &[Vec<f64>],
    labels: &[usize],
    max_epochs: usize,
    seed: Option<u64>,
) -> Result<SupervisedReport> {
    check_dataset(data, sfam.network.input_dim())?;
    if labels.len() != data.len() {
        return Err(ArtError::LabelCount {
            labels: labels.len(),
            rows: data.len(),
        });
    }
    if max_epochs == 0 {
        return Err(ArtError::InvalidParameter("max_epochs must be at least 1".into()));
    }
    sfam.prepare(data)?;
    let order = presentation_order(data.len(), seed);
    let mut report = SupervisedReport {
        epochs_run: 0,
        converged: false,
        created_last_epoch: 0,
    };
    while report.epochs_run < max_epochs {
        let before = sfam.clone();
        report.created_last_epoch = 0;
        for &i in &order {
            if sfam.train_step(&data[i], labels[i])?.created {
                report.created_last_epoch += 1;
            }
        }
        report.epochs_run += 1;
        if sfam.same_ltm(&before) {
            report.converged = true;
            break;
        }
    }
    Ok(report)
}
