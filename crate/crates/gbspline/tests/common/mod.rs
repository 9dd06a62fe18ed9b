//! Shared helpers for the integration tests.

use gbspline::KnotVector;
use rand::{rngs::StdRng, Rng};

/// Random nondecreasing knot vector with interior multiplicities up to
/// `max_mult`. Lengths are at least `2 * degree + 2`, which guarantees a
/// proper (nonempty) curve domain: a multiplicity cluster of at most
/// `max_mult <= degree` values cannot span from index `degree` to index
/// `m - degree - 1`.
pub fn random_knot_vector(
    rng: &mut StdRng,
    degree: usize,
    max_len: usize,
    max_mult: usize,
) -> KnotVector {
    let min_len = 2 * degree + 2;
    let len = rng.gen_range(min_len..=max_len.max(min_len));
    let mut knots = Vec::with_capacity(len);
    let mut x = rng.gen_range(-1.0..1.0);
    while knots.len() < len {
        let mult = rng
            .gen_range(1..=max_mult.max(1))
            .min(len - knots.len());
        for _ in 0..mult {
            knots.push(x);
        }
        x += rng.gen_range(0.25..1.5);
    }
    KnotVector::new(knots).expect("generated knots are nondecreasing")
}

/// Open (clamped) knot vector: end knots repeated `degree + 1` times around
/// `interior` uniformly spaced interior knots of unit spacing.
pub fn open_knot_vector(degree: usize, interior: usize) -> KnotVector {
    let mut knots = vec![0.0; degree + 1];
    for i in 1..=interior {
        knots.push(i as f64);
    }
    knots.extend(std::iter::repeat((interior + 1) as f64).take(degree + 1));
    KnotVector::new(knots).expect("open knots are nondecreasing")
}

/// Uniform knot vector `0, 1, ..., len - 1`.
pub fn uniform_knot_vector(len: usize) -> KnotVector {
    KnotVector::new((0..len).map(|i| i as f64).collect()).expect("uniform knots")
}

pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect()
}
