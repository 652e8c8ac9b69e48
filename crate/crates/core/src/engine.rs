//! Match-based presentation loop shared by every model family.
//!
//! A [`CategoryModel`] supplies the geometry (activation, match, learning and
//! initialization of one category). [`ArtNetwork`] owns the category list and
//! runs the search: rank committed categories by activation, test them in
//! order, learn in the first one that resonates, or commit a new category when
//! the search is exhausted.

use std::fmt::{self, Debug};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{ArtError, Result};
use crate::preprocess::{complement_code_into, shuffle_seeded};

/// Model family tag, also used as the `model_kind` string in model files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Art1,
    Fuzzy,
    Dvfa,
    Hypersphere,
    Ellipsoid,
    Gaussian,
    Bayes,
    Topoart,
}

impl ModelKind {
    pub const ALL: [ModelKind; 8] = [
        ModelKind::Art1,
        ModelKind::Fuzzy,
        ModelKind::Dvfa,
        ModelKind::Hypersphere,
        ModelKind::Ellipsoid,
        ModelKind::Gaussian,
        ModelKind::Bayes,
        ModelKind::Topoart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Art1 => "art1",
            ModelKind::Fuzzy => "fuzzy",
            ModelKind::Dvfa => "dvfa",
            ModelKind::Hypersphere => "hypersphere",
            ModelKind::Ellipsoid => "ellipsoid",
            ModelKind::Gaussian => "gaussian",
            ModelKind::Bayes => "bayes",
            ModelKind::Topoart => "topoart",
        }
    }

    /// Whether inputs are complement coded before reaching the categories.
    pub fn complement_coded(self) -> bool {
        matches!(self, ModelKind::Fuzzy | ModelKind::Dvfa | ModelKind::Topoart)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown model kind {s:?}"))
    }
}

/// Which side of the threshold a match value must fall on to resonate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchDirection {
    /// `M >= threshold` (similarity-style match).
    AtLeast,
    /// `M <= threshold` (volume-style match, Bayesian ART).
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    /// Commit a new category that joins the tested category's cluster.
    AcceptAsNewLinked,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub verdict: Verdict,
    pub match_value: f64,
}

/// Geometry of one model family.
///
/// `activations`, `test_match` and `resonance` are pure; all mutation goes
/// through `learn`, which must preserve the category's dimensionality.
pub trait CategoryModel: Clone + Debug + PartialEq + Serialize + DeserializeOwned {
    type Category: Clone + Debug + PartialEq + BitEq + Serialize + DeserializeOwned;

    fn kind(&self) -> ModelKind;

    /// Configuration checks that need the (pre-coding) input dimension.
    fn validate(&self, dim: usize) -> Result<()>;

    /// Per-sample checks beyond dimension and finiteness.
    fn check_input(&self, _x: &[f64]) -> Result<()> {
        Ok(())
    }

    /// Fills data-dependent defaults before batch training.
    fn prepare(&mut self, _data: &[Vec<f64>]) -> Result<()> {
        Ok(())
    }

    /// Activation of every committed category. Most models evaluate each
    /// category independently; Bayesian ART normalizes across the set.
    fn activations(&self, categories: &[Self::Category], x: &[f64]) -> Result<Vec<f64>>;

    /// Activation of an uncommitted node that takes part in the competition.
    /// Committed categories ranked below it are never tested.
    fn uncommitted_activation(&self, _x: &[f64]) -> Option<f64> {
        None
    }

    fn vigilance(&self) -> f64;

    fn match_direction(&self) -> MatchDirection {
        MatchDirection::AtLeast
    }

    /// Match value of `category` for `x` and whether it clears `threshold`.
    fn test_match(&self, category: &Self::Category, x: &[f64], threshold: f64) -> Result<(f64, bool)>;

    fn resonance(&self, category: &Self::Category, x: &[f64]) -> Result<Resonance> {
        let (match_value, pass) = self.test_match(category, x, self.vigilance())?;
        let verdict = if pass { Verdict::Accept } else { Verdict::Reject };
        Ok(Resonance { verdict, match_value })
    }

    fn learn(&self, category: &mut Self::Category, x: &[f64]) -> Result<()>;

    fn init_category(&self, x: &[f64]) -> Self::Category;

    /// Scalar extent of a category, reported by model summaries.
    fn category_size(&self, category: &Self::Category) -> f64;
}

/// Inference policy for unsupervised prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    /// Search as in training, without learning; unassigned if nothing resonates.
    #[default]
    Strict,
    /// Highest activation, unconditionally.
    Nearest,
}

/// One candidate examined during a search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub index: usize,
    pub activation: f64,
    pub match_value: f64,
    pub verdict: Verdict,
}

/// Result of presenting one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentOutcome {
    /// Winning category `J`, the one that learned or was created.
    pub category: usize,
    /// Cluster of the winner (equal to `category` except for linked models).
    pub cluster: usize,
    pub created: bool,
    pub match_value: f64,
    /// Number of categories after the presentation.
    pub category_count: usize,
    /// Candidates tested in search order.
    pub trace: Vec<Candidate>,
}

impl PresentOutcome {
    /// One-hot F2 activity over the categories present after learning.
    pub fn f2_activity(&self) -> Vec<u8> {
        let mut y = vec![0; self.category_count];
        y[self.category] = 1;
        y
    }
}

/// Candidate indices by descending activation, ties to the lower index.
pub fn rank(activations: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..activations.len()).collect();
    order.sort_by(|&a, &b| activations[b].total_cmp(&activations[a]).then(a.cmp(&b)));
    order
}

pub(crate) fn argmax(activations: &[f64]) -> Option<usize> {
    rank(activations).first().copied()
}

pub(crate) fn check_sample(x: &[f64], dim: usize) -> Result<()> {
    if x.is_empty() {
        return Err(ArtError::EmptySample);
    }
    if x.len() != dim {
        return Err(ArtError::DimensionMismatch {
            expected: dim,
            actual: x.len(),
        });
    }
    if let Some(index) = x.iter().position(|v| !v.is_finite()) {
        return Err(ArtError::NonFinite { index });
    }
    Ok(())
}

/// Unsupervised ART state: hyperparameters, committed categories, their
/// instance counts and the category-to-cluster table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "M: CategoryModel")]
pub struct ArtNetwork<M: CategoryModel> {
    model: M,
    input_dim: usize,
    categories: Vec<M::Category>,
    counts: Vec<u64>,
    /// Identity for every model except dual-vigilance ART, where several
    /// categories may share one cluster. Entries never change once written.
    cluster_of: Vec<usize>,
    cluster_count: usize,
    presentations: u64,
}

impl<M: CategoryModel> ArtNetwork<M> {
    pub fn new(model: M, input_dim: usize) -> Result<Self> {
        if input_dim == 0 {
            return Err(ArtError::InvalidParameter("input dimension must be positive".into()));
        }
        model.validate(input_dim)?;
        Ok(ArtNetwork {
            model,
            input_dim,
            categories: Vec::new(),
            counts: Vec::new(),
            cluster_of: Vec::new(),
            cluster_count: 0,
            presentations: 0,
        })
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn categories(&self) -> &[M::Category] {
        &self.categories
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn cluster_of(&self) -> &[usize] {
        &self.cluster_of
    }

    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    pub fn presentations(&self) -> u64 {
        self.presentations
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    /// Validates a raw sample and maps it into category space (complement
    /// coding where the model requires it).
    pub fn encode(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_sample(x, self.input_dim)?;
        let coded = if self.model.kind().complement_coded() {
            let mut out = Vec::with_capacity(2 * x.len());
            complement_code_into(x, &mut out)?;
            out
        } else {
            x.to_vec()
        };
        self.model.check_input(&coded)?;
        Ok(coded)
    }

    /// Presents one sample: search, then learn or commit.
    pub fn present(&mut self, x: &[f64]) -> Result<PresentOutcome> {
        let x = self.encode(x)?;
        self.present_encoded(&x)
    }

    pub(crate) fn present_encoded(&mut self, x: &[f64]) -> Result<PresentOutcome> {
        self.presentations += 1;
        let mut trace = Vec::new();
        if !self.categories.is_empty() {
            let activations = self.model.activations(&self.categories, x)?;
            let uncommitted = self.model.uncommitted_activation(x);
            for j in rank(&activations) {
                if uncommitted.is_some_and(|t| activations[j] < t) {
                    break;
                }
                let res = self.model.resonance(&self.categories[j], x)?;
                trace.push(Candidate {
                    index: j,
                    activation: activations[j],
                    match_value: res.match_value,
                    verdict: res.verdict,
                });
                match res.verdict {
                    Verdict::Accept => {
                        self.model.learn(&mut self.categories[j], x)?;
                        self.counts[j] += 1;
                        return Ok(PresentOutcome {
                            category: j,
                            cluster: self.cluster_of[j],
                            created: false,
                            match_value: res.match_value,
                            category_count: self.categories.len(),
                            trace,
                        });
                    }
                    Verdict::AcceptAsNewLinked => {
                        let cluster = self.cluster_of[j];
                        return self.commit(x, cluster, trace);
                    }
                    Verdict::Reject => {}
                }
            }
        }
        let cluster = self.cluster_count;
        self.cluster_count += 1;
        self.commit(x, cluster, trace)
    }

    fn commit(&mut self, x: &[f64], cluster: usize, trace: Vec<Candidate>) -> Result<PresentOutcome> {
        let category = self.model.init_category(x);
        let (match_value, _) = self.model.test_match(&category, x, self.model.vigilance())?;
        self.categories.push(category);
        self.counts.push(1);
        self.cluster_of.push(cluster);
        Ok(PresentOutcome {
            category: self.categories.len() - 1,
            cluster,
            created: true,
            match_value,
            category_count: self.categories.len(),
            trace,
        })
    }

    /// Label for `x` without learning. Returns the winner's cluster.
    pub fn predict(&self, x: &[f64], policy: Policy) -> Result<Option<usize>> {
        if self.categories.is_empty() {
            return Err(ArtError::Untrained);
        }
        let x = self.encode(x)?;
        let activations = self.model.activations(&self.categories, &x)?;
        match policy {
            Policy::Nearest => Ok(argmax(&activations).map(|j| self.cluster_of[j])),
            Policy::Strict => {
                let uncommitted = self.model.uncommitted_activation(&x);
                for j in rank(&activations) {
                    if uncommitted.is_some_and(|t| activations[j] < t) {
                        return Ok(None);
                    }
                    match self.model.resonance(&self.categories[j], &x)?.verdict {
                        Verdict::Accept | Verdict::AcceptAsNewLinked => return Ok(Some(self.cluster_of[j])),
                        Verdict::Reject => {}
                    }
                }
                Ok(None)
            }
        }
    }

    /// Bitwise equality of the long-term memory: category parameters and the
    /// cluster table. Instance counts are bookkeeping and excluded, except
    /// where a model stores them inside its categories.
    pub fn same_ltm(&self, other: &Self) -> bool {
        self.categories.len() == other.categories.len()
            && self.categories.iter().zip(&other.categories).all(|(a, b)| a.bit_eq(b))
            && self.cluster_of == other.cluster_of
    }

    /// Mutable access for the supervised wrapper, which runs its own search.
    pub(crate) fn parts_mut(&mut self) -> (&M, &mut Vec<M::Category>, &mut Vec<u64>) {
        (&self.model, &mut self.categories, &mut self.counts)
    }

    pub(crate) fn push_category(&mut self, x: &[f64]) -> usize {
        let category = self.model.init_category(x);
        self.categories.push(category);
        self.counts.push(1);
        self.cluster_of.push(self.cluster_count);
        self.cluster_count += 1;
        self.categories.len() - 1
    }

    pub(crate) fn tick(&mut self) {
        self.presentations += 1;
    }

    pub(crate) fn model_mut(&mut self) -> &mut M {
        &mut self.model
    }

    /// Structural checks for deserialized state.
    pub fn validate_state(&self) -> Result<()> {
        self.model.validate(self.input_dim)?;
        let n = self.categories.len();
        if self.counts.len() != n || self.cluster_of.len() != n {
            return Err(ArtError::InvalidParameter(
                "category, count and cluster tables differ in length".into(),
            ));
        }
        if self.cluster_of.iter().any(|&c| c >= self.cluster_count) {
            return Err(ArtError::InvalidParameter("cluster id out of range".into()));
        }
        if self.counts.contains(&0) {
            return Err(ArtError::InvalidParameter("zero instance count".into()));
        }
        Ok(())
    }
}

/// Bit-for-bit equality of floating-point state (`-0.0` differs from `0.0`).
pub trait BitEq {
    fn bit_eq(&self, other: &Self) -> bool;
}

impl BitEq for f64 {
    fn bit_eq(&self, other: &Self) -> bool {
        self.to_bits() == other.to_bits()
    }
}

impl BitEq for u64 {
    fn bit_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl BitEq for bool {
    fn bit_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl<T: BitEq> BitEq for [T] {
    fn bit_eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().zip(other).all(|(a, b)| a.bit_eq(b))
    }
}

impl<T: BitEq> BitEq for Vec<T> {
    fn bit_eq(&self, other: &Self) -> bool {
        self.as_slice().bit_eq(other.as_slice())
    }
}

/// What the epoch driver needs from a trainable model.
pub trait Learner: Clone {
    fn kind(&self) -> ModelKind;
    fn input_dim(&self) -> usize;
    fn category_count(&self) -> usize;
    fn prepare(&mut self, data: &[Vec<f64>]) -> Result<()>;
    fn present(&mut self, x: &[f64]) -> Result<PresentOutcome>;
    fn predict(&self, x: &[f64], policy: Policy) -> Result<Option<usize>>;
    /// Long-term memory identical bit for bit.
    fn same_ltm(&self, other: &Self) -> bool;

    /// Per-sample labels reported after fitting, given the clusters assigned
    /// during the final epoch.
    fn fit_labels(&self, _data: &[Vec<f64>], last_epoch: Vec<usize>) -> Result<Vec<Option<usize>>> {
        Ok(last_epoch.into_iter().map(Some).collect())
    }
}

impl<M: CategoryModel> Learner for ArtNetwork<M> {
    fn kind(&self) -> ModelKind {
        self.model.kind()
    }

    fn input_dim(&self) -> usize {
        self.input_dim
    }

    fn category_count(&self) -> usize {
        self.len()
    }

    fn prepare(&mut self, data: &[Vec<f64>]) -> Result<()> {
        self.model.prepare(data)?;
        self.model.validate(self.input_dim)
    }

    fn present(&mut self, x: &[f64]) -> Result<PresentOutcome> {
        ArtNetwork::present(self, x)
    }

    fn predict(&self, x: &[f64], policy: Policy) -> Result<Option<usize>> {
        ArtNetwork::predict(self, x, policy)
    }

    fn same_ltm(&self, other: &Self) -> bool {
        ArtNetwork::same_ltm(self, other)
    }
}

/// True iff no long-term memory changed between `prev` and `cur`.
pub fn check_convergence<L: Learner>(prev: &L, cur: &L) -> Result<bool> {
    if prev.kind() != cur.kind() {
        return Err(ArtError::KindMismatch {
            left: prev.kind().to_string(),
            right: cur.kind().to_string(),
        });
    }
    if prev.input_dim() != cur.input_dim() {
        return Err(ArtError::DimensionMismatch {
            expected: prev.input_dim(),
            actual: cur.input_dim(),
        });
    }
    Ok(cur.same_ltm(prev))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    /// Cluster label of every sample, in input order.
    pub labels: Vec<Option<usize>>,
    pub epochs_run: usize,
    pub converged: bool,
}

/// Presentation order for `n` samples: identity, or one seeded shuffle
/// reused for every epoch.
pub fn presentation_order(n: usize, seed: Option<u64>) -> Vec<usize> {
    match seed {
        Some(seed) => shuffle_seeded(n, seed),
        None => (0..n).collect(),
    }
}

pub(crate) fn check_dataset(data: &[Vec<f64>], dim: usize) -> Result<()> {
    if data.is_empty() {
        return Err(ArtError::EmptyDataset);
    }
    for (row, x) in data.iter().enumerate() {
        if x.len() != dim {
            return Err(ArtError::RaggedData {
                row,
                expected: dim,
                actual: x.len(),
            });
        }
    }
    Ok(())
}

/// Repeats full passes over `data` until an epoch leaves the long-term
/// memory unchanged or `max_epochs` is reached.
pub fn fit<L: Learner>(learner: &mut L, data: &[Vec<f64>], max_epochs: usize, seed: Option<u64>) -> Result<FitReport> {
    check_dataset(data, learner.input_dim())?;
    if max_epochs == 0 {
        return Err(ArtError::InvalidParameter("max_epochs must be at least 1".into()));
    }
    learner.prepare(data)?;
    let order = presentation_order(data.len(), seed);
    let mut labels = vec![0; data.len()];
    let mut converged = false;
    let mut epochs_run = 0;
    while epochs_run < max_epochs {
        let before = learner.clone();
        for &i in &order {
            labels[i] = learner.present(&data[i])?.cluster;
        }
        epochs_run += 1;
        if learner.same_ltm(&before) {
            converged = true;
            break;
        }
    }
    Ok(FitReport {
        labels: learner.fit_labels(data, labels)?,
        epochs_run,
        converged,
    })
}
