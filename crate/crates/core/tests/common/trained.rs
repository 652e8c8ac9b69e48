//! Small trained models of every kind, for persistence checks.

use artkit::{build_network, build_sfam, fit, AnyNetwork, AnySfam, HyperParams, MatchTracking, ModelKind};
use rand::Rng;

use super::fixtures::rng;

/// Inner models an ARTMAP classifier accepts.
pub const SUPERVISED: [ModelKind; 6] = [
    ModelKind::Art1,
    ModelKind::Fuzzy,
    ModelKind::Hypersphere,
    ModelKind::Ellipsoid,
    ModelKind::Gaussian,
    ModelKind::Bayes,
];

pub fn params(kind: ModelKind) -> HyperParams {
    let mut p = HyperParams::with_rho(match kind {
        ModelKind::Art1 => 0.6,
        ModelKind::Gaussian => 0.2,
        ModelKind::Bayes => 2e-4,
        ModelKind::Topoart => 0.8,
        _ => 0.75,
    });
    match kind {
        ModelKind::Dvfa => p.rho_lb = Some(0.5),
        ModelKind::Topoart => {
            p.phi = Some(2);
            p.tau = Some(10);
        }
        _ => {}
    }
    p
}

/// Three features; binary without the all-zero row for ART1, uniform otherwise.
pub fn sample(kind: ModelKind, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            if kind == ModelKind::Art1 {
                let bits = r.random_range(1..8u8);
                (0..3).map(|b| f64::from((bits >> b) & 1)).collect()
            } else {
                (0..3).map(|_| r.random_range(0.0..1.0)).collect()
            }
        })
        .collect()
}

/// A fitted network and probes it has not seen.
pub fn network(kind: ModelKind) -> (AnyNetwork, Vec<Vec<f64>>) {
    let data = sample(kind, 40, 3);
    let mut net = build_network(kind, &params(kind), 3).unwrap();
    fit(&mut net, &data, 5, Some(1)).unwrap();
    (net, sample(kind, 25, 4))
}

pub fn classifier(kind: ModelKind) -> (AnySfam, Vec<Vec<f64>>) {
    let data = sample(kind, 40, 5);
    let labels: Vec<usize> = data.iter().map(|x| usize::from(x[0] > 0.5)).collect();
    let mut s = build_sfam(kind, &params(kind), 3, MatchTracking::Plus, 0.001).unwrap();
    s.fit(&data, &labels, 5, Some(2)).unwrap();
    (s, sample(kind, 25, 6))
}
