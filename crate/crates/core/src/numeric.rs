//! Exact sign tests on short sums of products, via error-free transforms.

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Sign of the exact sum of `terms`, as a nonoverlapping expansion whose
/// largest nonzero component carries the sign.
fn exact_sign(terms: &[f64]) -> std::cmp::Ordering {
    let mut expansion: Vec<f64> = Vec::with_capacity(terms.len());
    for &t in terms {
        let mut q = t;
        for e in expansion.iter_mut() {
            let (s, h) = two_sum(q, *e);
            *e = h;
            q = s;
        }
        expansion.push(q);
    }
    expansion
        .iter()
        .rev()
        .find(|v| **v != 0.0)
        .map_or(std::cmp::Ordering::Equal, |v| v.total_cmp(&0.0))
}

/// Whether `Σ parts <= scale * (1 - t)` holds in exact arithmetic.
pub(crate) fn sum_within(parts: &[f64], scale: f64, t: f64) -> bool {
    let (s, e1) = two_sum(1.0, -t);
    let (p, e2) = two_prod(scale, s);
    let (q, e3) = two_prod(scale, e1);
    let mut terms = vec![p, e2, q, e3];
    terms.extend(parts.iter().map(|v| -v));
    exact_sign(&terms) != std::cmp::Ordering::Less
}
