//! Straight-line reimplementations in exact rational arithmetic. They share
//! no code with the library; only the encoded inputs are taken from `f64`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::exact::{and, l1, row, Q};

/// Complement coding done in `f64`, as the library does, then read exactly.
pub fn coded(x: &[f64]) -> Vec<Q> {
    let mut v = x.to_vec();
    v.extend(x.iter().map(|a| 1.0 - a));
    row(&v)
}

/// Indices by descending score, lower index first on ties.
pub fn ranked(scores: &[Q]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].cmp(&scores[a]).then(a.cmp(&b)));
    idx
}

fn blend(w: &[Q], x: &[Q], beta: &Q) -> Vec<Q> {
    let keep = Q::one() - beta;
    w.iter().zip(and(x, w)).map(|(wi, m)| &keep * wi + beta * m).collect()
}

#[derive(Clone, PartialEq)]
pub struct Fuzzy {
    pub alpha: Q,
    pub beta: Q,
    pub rho: Q,
    pub w: Vec<Vec<Q>>,
}

impl Fuzzy {
    pub fn new(alpha: Q, beta: Q, rho: Q) -> Self {
        Fuzzy {
            alpha,
            beta,
            rho,
            w: Vec::new(),
        }
    }

    pub fn activation(&self, j: usize, x: &[Q]) -> Q {
        l1(&and(x, &self.w[j])) / (&self.alpha + l1(&self.w[j]))
    }

    pub fn overlap(&self, j: usize, x: &[Q]) -> Q {
        l1(&and(x, &self.w[j]))
    }

    fn order(&self, x: &[Q]) -> Vec<usize> {
        let t: Vec<Q> = (0..self.w.len()).map(|j| self.activation(j, x)).collect();
        ranked(&t)
    }

    /// One presentation; returns the winner and whether it was created.
    pub fn present(&mut self, x: &[Q]) -> (usize, bool) {
        let need = &self.rho * l1(x);
        for j in self.order(x) {
            if self.overlap(j, x) >= need {
                self.w[j] = blend(&self.w[j], x, &self.beta);
                return (j, false);
            }
        }
        self.w.push(x.to_vec());
        (self.w.len() - 1, true)
    }

    pub fn fit(&mut self, data: &[Vec<Q>], max_epochs: usize) -> (Vec<usize>, usize, bool) {
        let mut labels = vec![0; data.len()];
        for epoch in 1..=max_epochs {
            let before = self.w.clone();
            for (i, x) in data.iter().enumerate() {
                labels[i] = self.present(x).0;
            }
            if self.w == before {
                return (labels, epoch, true);
            }
        }
        (labels, max_epochs, false)
    }
}

/// Simplified ARTMAP over exact Fuzzy ART with MT+ match tracking.
pub struct Artmap {
    pub net: Fuzzy,
    pub eps: Q,
    pub map: Vec<usize>,
}

impl Artmap {
    pub fn new(net: Fuzzy, eps: Q) -> Self {
        Artmap {
            net,
            eps,
            map: Vec::new(),
        }
    }

    pub fn train(&mut self, x: &[Q], label: usize) -> bool {
        let norm = l1(x);
        let mut threshold = self.net.rho.clone();
        for j in self.net.order(x) {
            let m = self.net.overlap(j, x) / &norm;
            if m < threshold {
                continue;
            }
            if self.map[j] == label {
                self.net.w[j] = blend(&self.net.w[j], x, &self.net.beta);
                return false;
            }
            threshold = m + &self.eps;
        }
        self.net.w.push(x.to_vec());
        self.map.push(label);
        true
    }

    pub fn fit(&mut self, data: &[Vec<Q>], labels: &[usize], max_epochs: usize) -> usize {
        for epoch in 1..=max_epochs {
            let before = (self.net.w.clone(), self.map.clone());
            for (x, &y) in data.iter().zip(labels) {
                self.train(x, y);
            }
            if (self.net.w.clone(), self.map.clone()) == before {
                return epoch;
            }
        }
        max_epochs
    }

    pub fn predict(&self, x: &[Q]) -> usize {
        self.map[self.net.order(x)[0]]
    }
}

#[derive(Clone)]
pub struct TopoNode {
    pub w: Vec<Q>,
    pub n: u64,
    pub permanent: bool,
}

pub struct TopoModule {
    pub rho: Q,
    pub nodes: Vec<TopoNode>,
    pub edges: BTreeSet<(usize, usize)>,
    pub t: u64,
}

pub struct Topo {
    pub alpha: Q,
    pub beta2: Q,
    pub phi: u64,
    pub tau: u64,
    pub a: TopoModule,
    pub b: TopoModule,
}

impl TopoModule {
    fn new(rho: Q) -> Self {
        TopoModule {
            rho,
            nodes: Vec::new(),
            edges: BTreeSet::new(),
            t: 0,
        }
    }

    /// Learns `x`; returns whether the best node was permanent afterwards.
    fn step(&mut self, x: &[Q], alpha: &Q, beta2: &Q) -> bool {
        self.t += 1;
        let need = &self.rho * l1(x);
        let t: Vec<Q> = self
            .nodes
            .iter()
            .map(|n| l1(&and(x, &n.w)) / (alpha + l1(&n.w)))
            .collect();
        let passing: Vec<usize> = ranked(&t)
            .into_iter()
            .filter(|&j| l1(&and(x, &self.nodes[j].w)) >= need)
            .take(2)
            .collect();
        match passing[..] {
            [] => {
                self.nodes.push(TopoNode {
                    w: x.to_vec(),
                    n: 1,
                    permanent: false,
                });
                false
            }
            [j1, ..] => {
                self.nodes[j1].w = and(x, &self.nodes[j1].w);
                self.nodes[j1].n += 1;
                if let Some(&j2) = passing.get(1) {
                    self.nodes[j2].w = blend(&self.nodes[j2].w, x, beta2);
                    self.edges.insert((j1.min(j2), j1.max(j2)));
                }
                self.nodes[j1].permanent
            }
        }
    }

    fn cleanup(&mut self, phi: u64) {
        let mut new_index = Vec::new();
        let mut kept = Vec::new();
        for node in self.nodes.drain(..) {
            if node.n >= phi || node.permanent {
                new_index.push(Some(kept.len()));
                kept.push(TopoNode {
                    permanent: true,
                    ..node
                });
            } else {
                new_index.push(None);
            }
        }
        self.nodes = kept;
        self.edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((new_index[a]?, new_index[b]?)))
            .collect();
    }

    /// Component id per permanent node, numbered in order of first member.
    pub fn components(&self) -> Vec<Option<usize>> {
        let mut id: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut next = 0;
        for start in 0..self.nodes.len() {
            if !self.nodes[start].permanent || id[start].is_some() {
                continue;
            }
            let mut stack = vec![start];
            id[start] = Some(next);
            while let Some(j) = stack.pop() {
                for &(a, b) in &self.edges {
                    let other = if a == j {
                        b
                    } else if b == j {
                        a
                    } else {
                        continue;
                    };
                    if self.nodes[other].permanent && id[other].is_none() {
                        id[other] = Some(next);
                        stack.push(other);
                    }
                }
            }
            next += 1;
        }
        id
    }

    /// `1 - |w - x ∧ w| / |x|` maximized over permanent nodes.
    pub fn predict(&self, x: &[Q]) -> Option<usize> {
        let comps = self.components();
        let norm = l1(x);
        let mut best: Option<(Q, usize)> = None;
        for (j, node) in self.nodes.iter().enumerate() {
            let Some(c) = comps[j] else { continue };
            let gap: Q = node
                .w
                .iter()
                .zip(and(x, &node.w))
                .fold(Q::zero(), |acc, (w, m)| acc + w - m);
            let t = Q::one() - gap / &norm;
            if best.as_ref().is_none_or(|(b, _)| t > *b) {
                best = Some((t, c));
            }
        }
        best.map(|(_, c)| c)
    }
}

impl Topo {
    pub fn new(alpha: Q, beta2: Q, rho_a: Q, phi: u64, tau: u64) -> Self {
        let rho_b = (&rho_a + Q::one()) / Q::from_integer(2.into());
        Topo {
            alpha,
            beta2,
            phi,
            tau,
            a: TopoModule::new(rho_a),
            b: TopoModule::new(rho_b),
        }
    }

    pub fn present(&mut self, x: &[Q]) {
        let propagate = self.a.step(x, &self.alpha, &self.beta2);
        if self.a.t.is_multiple_of(self.tau) {
            self.a.cleanup(self.phi);
        }
        if propagate {
            self.b.step(x, &self.alpha, &self.beta2);
            if self.b.t.is_multiple_of(self.tau) {
                self.b.cleanup(self.phi);
            }
        }
    }

    pub fn cluster_count(&self) -> usize {
        self.b.components().into_iter().flatten().max().map_or(0, |m| m + 1)
    }
}

/// Adjusted Rand index by enumerating every pair of samples.
pub fn ari_by_pairs<A: PartialEq, B: PartialEq>(a: &[A], b: &[B]) -> Q {
    let n = a.len();
    let (mut both, mut in_a, mut in_b, mut pairs) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let sa = a[i] == a[j];
            let sb = b[i] == b[j];
            pairs += 1;
            in_a += i64::from(sa);
            in_b += i64::from(sb);
            both += i64::from(sa && sb);
        }
    }
    let q = |v: i64| Q::from_integer(v.into());
    let expected = q(in_a) * q(in_b) / q(pairs);
    let max = (q(in_a) + q(in_b)) / q(2);
    if max == expected {
        return Q::one();
    }
    (q(both) - &expected) / (max - expected)
}
