//! Runtime-selected models: one enum over every unsupervised family, one over
//! every supported ARTMAP inner model, and a builder from flat hyperparameters.

use serde::{Deserialize, Serialize};

use crate::engine::{ArtNetwork, CategoryModel, Learner, ModelKind, Policy, PresentOutcome};
use crate::error::{ArtError, Result};
use crate::models::fuzzy::fa_category_size;
use crate::models::*;
use crate::supervised::{fit_supervised, MatchTracking, Sfam, SupervisedReport};
use crate::topology::{TopoArt, TopoParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnyNetwork {
    Art1(ArtNetwork<Art1>),
    Fuzzy(ArtNetwork<FuzzyArt>),
    Dvfa(ArtNetwork<Dvfa>),
    Hypersphere(ArtNetwork<HypersphereArt>),
    Ellipsoid(ArtNetwork<EllipsoidArt>),
    Gaussian(ArtNetwork<GaussianArt>),
    Bayes(ArtNetwork<BayesianArt>),
    Topoart(TopoArt),
}

macro_rules! each_network {
    ($value:expr, $n:ident => $body:expr) => {
        match $value {
            AnyNetwork::Art1($n) => $body,
            AnyNetwork::Fuzzy($n) => $body,
            AnyNetwork::Dvfa($n) => $body,
            AnyNetwork::Hypersphere($n) => $body,
            AnyNetwork::Ellipsoid($n) => $body,
            AnyNetwork::Gaussian($n) => $body,
            AnyNetwork::Bayes($n) => $body,
            AnyNetwork::Topoart($n) => $body,
        }
    };
}

/// Shape of a trained model, as printed by `info`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSummary {
    pub kind: ModelKind,
    pub input_dim: usize,
    pub category_count: usize,
    pub cluster_count: usize,
    /// Model-specific extent of every category.
    pub sizes: Vec<f64>,
}

impl ModelSummary {
    /// `(min, mean, max)` of the category sizes.
    pub fn size_stats(&self) -> Option<(f64, f64, f64)> {
        if self.sizes.is_empty() {
            return None;
        }
        let min = self.sizes.iter().copied().fold(f64::INFINITY, f64::min);
        let max = self.sizes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = self.sizes.iter().sum::<f64>() / self.sizes.len() as f64;
        Some((min, mean, max))
    }
}

fn summarize<M: CategoryModel>(net: &ArtNetwork<M>) -> ModelSummary {
    ModelSummary {
        kind: net.model().kind(),
        input_dim: net.input_dim(),
        category_count: net.len(),
        cluster_count: net.cluster_count(),
        sizes: net.categories().iter().map(|c| net.model().category_size(c)).collect(),
    }
}

impl AnyNetwork {
    pub fn summary(&self) -> ModelSummary {
        match self {
            AnyNetwork::Topoart(t) => ModelSummary {
                kind: ModelKind::Topoart,
                input_dim: t.input_dim,
                category_count: t.b.nodes.len(),
                cluster_count: t.cluster_count(),
                sizes: t.b.nodes.iter().map(|n| fa_category_size(&n.weights)).collect(),
            },
            AnyNetwork::Art1(n) => summarize(n),
            AnyNetwork::Fuzzy(n) => summarize(n),
            AnyNetwork::Dvfa(n) => summarize(n),
            AnyNetwork::Hypersphere(n) => summarize(n),
            AnyNetwork::Ellipsoid(n) => summarize(n),
            AnyNetwork::Gaussian(n) => summarize(n),
            AnyNetwork::Bayes(n) => summarize(n),
        }
    }

    pub fn validate_state(&self) -> Result<()> {
        each_network!(self, n => n.validate_state())
    }
}

impl Learner for AnyNetwork {
    fn kind(&self) -> ModelKind {
        each_network!(self, n => Learner::kind(n))
    }

    fn input_dim(&self) -> usize {
        each_network!(self, n => Learner::input_dim(n))
    }

    fn category_count(&self) -> usize {
        each_network!(self, n => n.category_count())
    }

    fn prepare(&mut self, data: &[Vec<f64>]) -> Result<()> {
        each_network!(self, n => n.prepare(data))
    }

    fn present(&mut self, x: &[f64]) -> Result<PresentOutcome> {
        each_network!(self, n => Learner::present(n, x))
    }

    fn predict(&self, x: &[f64], policy: Policy) -> Result<Option<usize>> {
        each_network!(self, n => Learner::predict(n, x, policy))
    }

    fn same_ltm(&self, other: &Self) -> bool {
        use AnyNetwork::*;
        match (self, other) {
            (Art1(a), Art1(b)) => a.same_ltm(b),
            (Fuzzy(a), Fuzzy(b)) => a.same_ltm(b),
            (Dvfa(a), Dvfa(b)) => a.same_ltm(b),
            (Hypersphere(a), Hypersphere(b)) => a.same_ltm(b),
            (Ellipsoid(a), Ellipsoid(b)) => a.same_ltm(b),
            (Gaussian(a), Gaussian(b)) => a.same_ltm(b),
            (Bayes(a), Bayes(b)) => a.same_ltm(b),
            (Topoart(a), Topoart(b)) => Learner::same_ltm(a, b),
            _ => false,
        }
    }

    fn fit_labels(&self, data: &[Vec<f64>], last_epoch: Vec<usize>) -> Result<Vec<Option<usize>>> {
        each_network!(self, n => n.fit_labels(data, last_epoch))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnySfam {
    Art1(Sfam<Art1>),
    Fuzzy(Sfam<FuzzyArt>),
    Hypersphere(Sfam<HypersphereArt>),
    Ellipsoid(Sfam<EllipsoidArt>),
    Gaussian(Sfam<GaussianArt>),
    Bayes(Sfam<BayesianArt>),
}

macro_rules! each_sfam {
    ($value:expr, $s:ident => $body:expr) => {
        match $value {
            AnySfam::Art1($s) => $body,
            AnySfam::Fuzzy($s) => $body,
            AnySfam::Hypersphere($s) => $body,
            AnySfam::Ellipsoid($s) => $body,
            AnySfam::Gaussian($s) => $body,
            AnySfam::Bayes($s) => $body,
        }
    };
}

impl AnySfam {
    pub fn kind(&self) -> ModelKind {
        each_sfam!(self, s => s.network().model().kind())
    }

    pub fn input_dim(&self) -> usize {
        each_sfam!(self, s => s.network().input_dim())
    }

    pub fn map(&self) -> &[usize] {
        each_sfam!(self, s => s.map())
    }

    pub fn train_step(&mut self, x: &[f64], label: usize) -> Result<bool> {
        each_sfam!(self, s => Ok(s.train_step(x, label)?.created))
    }

    pub fn fit(
        &mut self,
        data: &[Vec<f64>],
        labels: &[usize],
        max_epochs: usize,
        seed: Option<u64>,
    ) -> Result<SupervisedReport> {
        each_sfam!(self, s => fit_supervised(s, data, labels, max_epochs, seed))
    }

    pub fn predict(&self, x: &[f64], strict: bool) -> Result<Option<usize>> {
        each_sfam!(self, s => s.predict(x, strict))
    }

    pub fn same_ltm(&self, other: &Self) -> bool {
        use AnySfam::*;
        match (self, other) {
            (Art1(a), Art1(b)) => a.same_ltm(b),
            (Fuzzy(a), Fuzzy(b)) => a.same_ltm(b),
            (Hypersphere(a), Hypersphere(b)) => a.same_ltm(b),
            (Ellipsoid(a), Ellipsoid(b)) => a.same_ltm(b),
            (Gaussian(a), Gaussian(b)) => a.same_ltm(b),
            (Bayes(a), Bayes(b)) => a.same_ltm(b),
            _ => false,
        }
    }

    pub fn summary(&self) -> ModelSummary {
        let mut summary = each_sfam!(self, s => summarize(s.network()));
        summary.cluster_count = {
            let mut classes = self.map().to_vec();
            classes.sort_unstable();
            classes.dedup();
            classes.len()
        };
        summary
    }

    pub fn validate_state(&self) -> Result<()> {
        each_sfam!(self, s => s.validate_state())
    }
}

/// Flat hyperparameter set; unset fields take the family defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HyperParams {
    pub rho: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub rho_lb: Option<f64>,
    pub mu: Option<f64>,
    pub rbar: Option<f64>,
    pub sigma_init: Option<f64>,
    pub diagonal: bool,
    pub phi: Option<u64>,
    pub tau: Option<u64>,
    pub beta2: Option<f64>,
    pub l: Option<f64>,
}

impl HyperParams {
    pub fn with_rho(rho: f64) -> Self {
        HyperParams {
            rho,
            ..Default::default()
        }
    }
}

const DEFAULT_ALPHA: f64 = 0.001;
const DEFAULT_MU: f64 = 0.5;
const DEFAULT_GAUSS_SIGMA: f64 = 0.1;

fn reject_beta(kind: ModelKind, p: &HyperParams) -> Result<()> {
    if p.beta.is_some() {
        return Err(ArtError::InvalidParameter(format!("{kind} takes no beta")));
    }
    Ok(())
}

fn fuzzy_params(p: &HyperParams) -> FuzzyParams {
    FuzzyParams {
        alpha: p.alpha.unwrap_or(DEFAULT_ALPHA),
        beta: p.beta.unwrap_or(1.0),
        rho: p.rho,
    }
}

fn art1(p: &HyperParams) -> Result<Art1> {
    Art1::new(Art1Params {
        l: p.l.unwrap_or(2.0),
        rho: p.rho,
    })
}

fn hypersphere(p: &HyperParams) -> Result<HypersphereArt> {
    HypersphereArt::new(SphereParams {
        alpha: p.alpha.unwrap_or(DEFAULT_ALPHA),
        beta: p.beta.unwrap_or(1.0),
        rho: p.rho,
        rbar: p.rbar,
    })
}

fn ellipsoid(p: &HyperParams) -> Result<EllipsoidArt> {
    EllipsoidArt::new(EllipsoidParams {
        alpha: p.alpha.unwrap_or(DEFAULT_ALPHA),
        beta: p.beta.unwrap_or(1.0),
        ..EllipsoidParams::new(p.rho, p.mu.unwrap_or(DEFAULT_MU), p.rbar)
    })
}

fn gaussian(p: &HyperParams) -> Result<GaussianArt> {
    reject_beta(ModelKind::Gaussian, p)?;
    GaussianArt::new(GaussParams {
        rho: p.rho,
        sigma_init: p.sigma_init.unwrap_or(DEFAULT_GAUSS_SIGMA),
    })
}

fn bayes(p: &HyperParams, dim: usize) -> Result<BayesianArt> {
    reject_beta(ModelKind::Bayes, p)?;
    let mut params = BayesParams::with_default_sigma(p.rho, dim);
    if let Some(s) = p.sigma_init {
        params.sigma_init = s;
    }
    params.diagonal = p.diagonal;
    BayesianArt::new(params, dim)
}

/// Builds an untrained network of `kind` for `dim` raw input features.
pub fn build_network(kind: ModelKind, p: &HyperParams, dim: usize) -> Result<AnyNetwork> {
    Ok(match kind {
        ModelKind::Art1 => AnyNetwork::Art1(ArtNetwork::new(art1(p)?, dim)?),
        ModelKind::Fuzzy => AnyNetwork::Fuzzy(ArtNetwork::new(FuzzyArt::new(fuzzy_params(p))?, dim)?),
        ModelKind::Dvfa => {
            let lb = p
                .rho_lb
                .ok_or_else(|| ArtError::InvalidParameter("dvfa requires rho_lb".into()))?;
            let fp = fuzzy_params(p);
            let params = DvfaParams {
                alpha: fp.alpha,
                beta: fp.beta,
                rho_ub: p.rho,
                rho_lb: lb,
            };
            AnyNetwork::Dvfa(ArtNetwork::new(Dvfa::new(params)?, dim)?)
        }
        ModelKind::Hypersphere => AnyNetwork::Hypersphere(ArtNetwork::new(hypersphere(p)?, dim)?),
        ModelKind::Ellipsoid => AnyNetwork::Ellipsoid(ArtNetwork::new(ellipsoid(p)?, dim)?),
        ModelKind::Gaussian => AnyNetwork::Gaussian(ArtNetwork::new(gaussian(p)?, dim)?),
        ModelKind::Bayes => AnyNetwork::Bayes(ArtNetwork::new(bayes(p, dim)?, dim)?),
        ModelKind::Topoart => {
            reject_beta(kind, p)?;
            let defaults = TopoParams::new(p.rho);
            let params = TopoParams {
                alpha: p.alpha.unwrap_or(defaults.alpha),
                beta2: p.beta2.unwrap_or(defaults.beta2),
                rho_a: p.rho,
                phi: p.phi.unwrap_or(defaults.phi),
                tau: p.tau.unwrap_or(defaults.tau),
            };
            AnyNetwork::Topoart(TopoArt::new(params, dim)?)
        }
    })
}

/// Builds an untrained ARTMAP classifier over an inner model of `kind`.
pub fn build_sfam(kind: ModelKind, p: &HyperParams, dim: usize, mode: MatchTracking, epsilon: f64) -> Result<AnySfam> {
    Ok(match kind {
        ModelKind::Art1 => AnySfam::Art1(Sfam::new(ArtNetwork::new(art1(p)?, dim)?, mode, epsilon)?),
        ModelKind::Fuzzy => AnySfam::Fuzzy(Sfam::new(
            ArtNetwork::new(FuzzyArt::new(fuzzy_params(p))?, dim)?,
            mode,
            epsilon,
        )?),
        ModelKind::Hypersphere => {
            AnySfam::Hypersphere(Sfam::new(ArtNetwork::new(hypersphere(p)?, dim)?, mode, epsilon)?)
        }
        ModelKind::Ellipsoid => AnySfam::Ellipsoid(Sfam::new(ArtNetwork::new(ellipsoid(p)?, dim)?, mode, epsilon)?),
        ModelKind::Gaussian => AnySfam::Gaussian(Sfam::new(ArtNetwork::new(gaussian(p)?, dim)?, mode, epsilon)?),
        ModelKind::Bayes => AnySfam::Bayes(Sfam::new(ArtNetwork::new(bayes(p, dim)?, dim)?, mode, epsilon)?),
        ModelKind::Dvfa | ModelKind::Topoart => return Err(ArtError::UnsupportedInner(kind.to_string())),
    })
}
