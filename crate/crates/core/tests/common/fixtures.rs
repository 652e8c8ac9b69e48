//! Seeded synthetic datasets shared by the oracle, property and acceptance
//! suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(n: usize, d: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..n).map(|_| (0..d).map(|_| r.random::<f64>()).collect()).collect()
}

/// Isotropic Gaussian blob clipped to the unit cube.
pub fn blob(r: &mut ChaCha8Rng, centre: &[f64], sd: f64, n: usize) -> Vec<Vec<f64>> {
    let normal = Normal::new(0.0, sd).unwrap();
    (0..n)
        .map(|_| centre.iter().map(|c| (c + normal.sample(r)).clamp(0.0, 1.0)).collect())
        .collect()
}

/// `k` blobs of `per` points in `d` dimensions with labels, shuffled.
pub fn blobs(k: usize, per: usize, d: usize, sd: f64, seed: u64) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut r = rng(seed);
    let centres: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..d).map(|_| r.random_range(0.15..0.85)).collect())
        .collect();
    let mut rows = Vec::new();
    for (label, c) in centres.iter().enumerate() {
        for x in blob(&mut r, c, sd, per) {
            rows.push((x, label));
        }
    }
    shuffle(&mut rows, &mut r);
    rows.into_iter().unzip()
}

pub fn shuffle<T>(items: &mut [T], r: &mut ChaCha8Rng) {
    for i in (1..items.len()).rev() {
        items.swap(i, r.random_range(0..=i));
    }
}

/// Two linearly separable classes in 2-D: blobs around (0.25, 0.3) and
/// (0.75, 0.7), shuffled.
pub fn two_class(n: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut r = rng(seed);
    let mut rows = Vec::new();
    for (label, centre) in [[0.25, 0.3], [0.75, 0.7]].iter().enumerate() {
        for x in blob(&mut r, centre, 0.06, n / 2) {
            rows.push((x, label));
        }
    }
    shuffle(&mut rows, &mut r);
    rows.into_iter().unzip()
}

/// Noise points carry label `None`.
pub struct NoisyBlobs {
    pub data: Vec<Vec<f64>>,
    pub truth: Vec<Option<usize>>,
}

/// Two dense blobs of 160 points each plus 80 uniform noise points.
pub fn two_blobs_with_noise(seed: u64) -> NoisyBlobs {
    let mut r = rng(seed);
    let mut rows: Vec<(Vec<f64>, Option<usize>)> = Vec::new();
    for (label, centre) in [[0.3, 0.3], [0.7, 0.7]].iter().enumerate() {
        for x in blob(&mut r, centre, 0.05, 160) {
            rows.push((x, Some(label)));
        }
    }
    for _ in 0..80 {
        rows.push((vec![r.random::<f64>(), r.random::<f64>()], None));
    }
    shuffle(&mut rows, &mut r);
    let (data, truth) = rows.into_iter().unzip();
    NoisyBlobs { data, truth }
}

/// The small datasets convergence and supervised checks sweep over.
pub fn desk() -> Vec<(&'static str, Vec<Vec<f64>>)> {
    vec![
        ("uniform 200x2", uniform(200, 2, 1)),
        ("uniform 500x4", uniform(500, 4, 2)),
        ("three blobs 2-D", blobs(3, 100, 2, 0.05, 3).0),
        ("five blobs 6-D", blobs(5, 80, 6, 0.08, 4).0),
        ("two classes", two_class(400, 5).0),
        ("noisy two blobs", two_blobs_with_noise(6).data),
    ]
}
