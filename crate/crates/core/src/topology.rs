//! TopoART: two cascaded Fuzzy ART modules that learn a topology.
//!
//! Each module keeps an instance counter per node. Every `tau` presentations
//! (counted per module) nodes that reached `phi` become permanent and the
//! remaining candidates are pruned. The best and second-best resonating nodes
//! are linked by an edge, and clusters are the connected components over the
//! permanent nodes. A sample reaches module B only when module A's winner is
//! permanent; B runs with the finer vigilance `(rho_a + 1) / 2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::engine::{argmax, check_dataset, Learner, ModelKind, Policy, PresentOutcome};
use crate::error::{ArtError, Result};
use crate::models::fuzzy::{check_alpha, check_unit, coded_norm, fa_activation, fa_learn, fa_passes};
use crate::preprocess::complement_code_into;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopoParams {
    pub alpha: f64,
    /// Learning rate of the second winner, in `[0, 1)`.
    pub beta2: f64,
    pub rho_a: f64,
    /// Instance count a node needs to become permanent.
    pub phi: u64,
    /// Cleanup period, in presentations.
    pub tau: u64,
}

impl TopoParams {
    pub fn new(rho_a: f64) -> Self {
        TopoParams {
            alpha: 0.001,
            beta2: 0.6,
            rho_a,
            phi: 5,
            tau: 100,
        }
    }

    pub fn rho_b(&self) -> f64 {
        (self.rho_a + 1.0) / 2.0
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_unit("rho_a", self.rho_a)?;
        if !(0.0..1.0).contains(&self.beta2) {
            return Err(ArtError::InvalidParameter(format!(
                "beta2 must lie in [0, 1), got {}",
                self.beta2
            )));
        }
        if self.phi == 0 || self.tau == 0 {
            return Err(ArtError::InvalidParameter("phi and tau must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopoNode {
    pub weights: Vec<f64>,
    pub count: u64,
    pub permanent: bool,
}

/// What one module did with a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuleStep {
    /// Node that learned or was created (index before any cleanup).
    pub first: usize,
    pub second: Option<usize>,
    pub created: bool,
    pub match_value: f64,
    /// Whether `first` was permanent after learning.
    pub permanent: bool,
    pub node_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopoModule {
    pub rho: f64,
    pub nodes: Vec<TopoNode>,
    /// Undirected edges stored as `(low, high)`.
    pub edges: BTreeSet<(usize, usize)>,
    pub presentations: u64,
    /// Summed counters of every node pruned so far.
    pub removed_count: u64,
}

impl TopoModule {
    pub fn new(rho: f64) -> Self {
        TopoModule {
            rho,
            nodes: Vec::new(),
            edges: BTreeSet::new(),
            presentations: 0,
            removed_count: 0,
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    pub fn neighbors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == j {
                Some(b)
            } else if b == j {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn permanent_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.permanent).count()
    }

    /// Search, learn both winners, link them. `x` is complement coded.
    pub fn step(&mut self, x: &[f64], params: &TopoParams) -> Result<ModuleStep> {
        self.presentations += 1;
        let activations = self
            .nodes
            .iter()
            .map(|n| fa_activation(&n.weights, x, params.alpha))
            .collect::<Result<Vec<f64>>>()?;
        let mut first = None;
        let mut second = None;
        for j in crate::engine::rank(&activations) {
            let (m, pass) = fa_passes(&self.nodes[j].weights, x, self.rho)?;
            if pass {
                if first.is_none() {
                    first = Some((j, m));
                } else {
                    second = Some(j);
                    break;
                }
            }
        }
        let Some((j1, match_value)) = first else {
            self.nodes.push(TopoNode {
                weights: fa_learn(&vec![1.0; x.len()], x, 1.0),
                count: 1,
                permanent: false,
            });
            return Ok(ModuleStep {
                first: self.nodes.len() - 1,
                second: None,
                created: true,
                match_value: 1.0,
                permanent: false,
                node_count: self.nodes.len(),
            });
        };
        let winner = &mut self.nodes[j1];
        winner.weights = fa_learn(&winner.weights, x, 1.0);
        winner.count += 1;
        if let Some(j2) = second {
            let runner = &mut self.nodes[j2];
            runner.weights = fa_learn(&runner.weights, x, params.beta2);
            self.add_edge(j1, j2);
        }
        Ok(ModuleStep {
            first: j1,
            second,
            created: false,
            match_value,
            permanent: self.nodes[j1].permanent,
            node_count: self.nodes.len(),
        })
    }

    /// Promotes nodes with `count >= phi`, then drops the remaining
    /// candidates with their edges and re-indexes the survivors.
    pub fn cleanup(&mut self, phi: u64) {
        for node in &mut self.nodes {
            if node.count >= phi {
                node.permanent = true;
            }
        }
        let mut remap = vec![None; self.nodes.len()];
        let mut kept = Vec::with_capacity(self.nodes.len());
        for (j, node) in std::mem::take(&mut self.nodes).into_iter().enumerate() {
            if node.permanent {
                remap[j] = Some(kept.len());
                kept.push(node);
            } else {
                self.removed_count += node.count;
            }
        }
        self.nodes = kept;
        self.edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((remap[a]?, remap[b]?)))
            .collect();
    }

    /// Cluster id of every node: connected components over permanent nodes,
    /// numbered by their smallest member. Candidates get `None`.
    pub fn clusters(&self) -> Vec<Option<usize>> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for &(a, b) in &self.edges {
            if self.nodes[a].permanent && self.nodes[b].permanent {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                // the smaller index stays root
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut id_of_root = vec![None; n];
        let mut next = 0;
        let mut out = vec![None; n];
        for (j, slot) in out.iter_mut().enumerate() {
            if !self.nodes[j].permanent {
                continue;
            }
            let root = find(&mut parent, j);
            let id = *id_of_root[root].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            *slot = Some(id);
        }
        out
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters().into_iter().flatten().max().map_or(0, |m| m + 1)
    }

    /// Size-independent activation `1 - |(x ∧ w) - w| / |x|` of every node.
    pub fn predict_activations(&self, x: &[f64]) -> Result<Vec<f64>> {
        let norm = coded_norm(x);
        if norm <= 0.0 {
            return Err(ArtError::ZeroNorm);
        }
        self.nodes
            .iter()
            .map(|n| {
                if n.weights.len() != x.len() {
                    return Err(ArtError::DimensionMismatch {
                        expected: n.weights.len(),
                        actual: x.len(),
                    });
                }
                let gap: Vec<f64> = n.weights.iter().zip(x).map(|(w, xi)| w - xi.min(*w)).collect();
                Ok(1.0 - coded_norm(&gap) / norm)
            })
            .collect()
    }

    /// Cluster of the best permanent node; vigilance is not consulted.
    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        let activations = self.predict_activations(x)?;
        let clusters = self.clusters();
        let masked: Vec<f64> = activations
            .iter()
            .zip(&clusters)
            .map(|(&t, c)| if c.is_some() { t } else { f64::NEG_INFINITY })
            .collect();
        argmax(&masked)
            .and_then(|j| clusters[j])
            .ok_or(ArtError::NoPermanentNodes)
    }

    fn same_ltm(&self, other: &Self) -> bool {
        self.nodes.len() == other.nodes.len()
            && self.nodes.iter().zip(&other.nodes).all(|(a, b)| {
                a.permanent == b.permanent
                    && a.weights.len() == b.weights.len()
                    && a.weights
                        .iter()
                        .zip(&b.weights)
                        .all(|(p, q)| p.to_bits() == q.to_bits())
            })
            && self.edges == other.edges
    }

    fn validate(&self, coded_dim: usize) -> Result<()> {
        let n = self.nodes.len();
        if self
            .nodes
            .iter()
            .any(|node| node.weights.len() != coded_dim || node.count == 0)
        {
            return Err(ArtError::InvalidParameter("malformed TopoART node".into()));
        }
        if self.edges.iter().any(|&(a, b)| a >= b || b >= n) {
            return Err(ArtError::InvalidParameter("TopoART edge out of range".into()));
        }
        Ok(())
    }
}

/// Result of presenting one sample to both modules.
#[derive(Debug, Clone, PartialEq)]
pub struct TopoOutcome {
    pub a: ModuleStep,
    /// `None` when the sample was not propagated.
    pub b: Option<ModuleStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopoArt {
    pub params: TopoParams,
    pub input_dim: usize,
    pub a: TopoModule,
    pub b: TopoModule,
}

impl TopoArt {
    pub fn new(params: TopoParams, input_dim: usize) -> Result<Self> {
        params.validate()?;
        if input_dim == 0 {
            return Err(ArtError::InvalidParameter("input dimension must be positive".into()));
        }
        Ok(TopoArt {
            params,
            input_dim,
            a: TopoModule::new(params.rho_a),
            b: TopoModule::new(params.rho_b()),
        })
    }

    fn encode(&self, x: &[f64]) -> Result<Vec<f64>> {
        crate::engine::check_sample(x, self.input_dim)?;
        let mut out = Vec::with_capacity(2 * x.len());
        complement_code_into(x, &mut out)?;
        Ok(out)
    }

    pub fn present_topo(&mut self, x: &[f64]) -> Result<TopoOutcome> {
        let x = self.encode(x)?;
        let a = self.a.step(&x, &self.params)?;
        if self.a.presentations.is_multiple_of(self.params.tau) {
            self.a.cleanup(self.params.phi);
        }
        let b = if a.permanent {
            let step = self.b.step(&x, &self.params)?;
            if self.b.presentations.is_multiple_of(self.params.tau) {
                self.b.cleanup(self.params.phi);
            }
            Some(step)
        } else {
            None
        };
        Ok(TopoOutcome { a, b })
    }

    /// Cluster id from module B's permanent nodes.
    pub fn predict_cluster(&self, x: &[f64]) -> Result<usize> {
        let x = self.encode(x)?;
        self.b.predict(&x)
    }

    pub fn cluster_count(&self) -> usize {
        self.b.cluster_count()
    }

    pub fn validate_state(&self) -> Result<()> {
        self.params.validate()?;
        if self.a.rho != self.params.rho_a || self.b.rho != self.params.rho_b() {
            return Err(ArtError::InvalidParameter(
                "module vigilance does not match rho_a".into(),
            ));
        }
        self.a.validate(2 * self.input_dim)?;
        self.b.validate(2 * self.input_dim)
    }
}

impl Learner for TopoArt {
    fn kind(&self) -> ModelKind {
        ModelKind::Topoart
    }

    fn input_dim(&self) -> usize {
        self.input_dim
    }

    fn category_count(&self) -> usize {
        self.b.nodes.len()
    }

    fn prepare(&mut self, data: &[Vec<f64>]) -> Result<()> {
        check_dataset(data, self.input_dim)
    }

    /// Reports module A's winner; topology clusters come from [`Learner::fit_labels`].
    fn present(&mut self, x: &[f64]) -> Result<PresentOutcome> {
        let out = self.present_topo(x)?;
        Ok(PresentOutcome {
            category: out.a.first,
            cluster: out.a.first,
            created: out.a.created,
            match_value: out.a.match_value,
            category_count: out.a.node_count,
            trace: Vec::new(),
        })
    }

    fn predict(&self, x: &[f64], _policy: Policy) -> Result<Option<usize>> {
        self.predict_cluster(x).map(Some)
    }

    fn same_ltm(&self, other: &Self) -> bool {
        self.a.same_ltm(&other.a) && self.b.same_ltm(&other.b)
    }

    fn fit_labels(&self, data: &[Vec<f64>], _last_epoch: Vec<usize>) -> Result<Vec<Option<usize>>> {
        data.iter()
            .map(|x| match self.predict_cluster(x) {
                Ok(c) => Ok(Some(c)),
                Err(ArtError::NoPermanentNodes) => Ok(None),
                Err(e) => Err(e),
            })
            .collect()
    }
}
