//! Direct evaluation against the recursive-quadrature oracle, and the
//! smoothness guarantees at repeated knots.

mod common;

use common::{linspace, uniform_knot_vector};
use gbspline::{
    build_basis, build_basis_opts, BuildOptions, KnotFunctionFamily, KnotVector,
    QuadratureConfig, RecursiveOracle,
};

fn ladder_opts() -> BuildOptions {
    BuildOptions {
        retain_ladder: true,
        ..BuildOptions::default()
    }
}

#[test]
fn trig_cubic_matches_recursive_oracle() {
    let knots = uniform_knot_vector(10);
    let degree = 3;
    let family = KnotFunctionFamily::trig(1.0);
    let basis = build_basis(&knots, &family, degree).unwrap();
    let oracle = RecursiveOracle::new(
        &knots,
        &family,
        degree,
        QuadratureConfig {
            abs_tol: 1e-10,
            max_depth: 40,
        },
    )
    .unwrap();

    let (lo, hi) = knots.domain(degree).unwrap();
    let mut worst = 0.0f64;
    for t in linspace(lo, hi, 100) {
        for i in 0..basis.basis_count() {
            let direct = basis.eval_basis(i, t).unwrap();
            let reference = oracle.eval_basis(i, t).unwrap();
            worst = worst.max((direct - reference).abs());
        }
    }
    assert!(worst < 1e-7, "max |direct - oracle| = {worst:e}");
}

#[test]
fn exponential_quadratic_matches_recursive_oracle() {
    let knots = KnotVector::new(vec![0.0, 0.0, 0.0, 1.0, 2.5, 3.0, 4.0, 4.0, 4.0]).unwrap();
    let degree = 2;
    let family = KnotFunctionFamily::exp(1.0);
    let basis = build_basis(&knots, &family, degree).unwrap();
    let oracle =
        RecursiveOracle::new(&knots, &family, degree, QuadratureConfig::default()).unwrap();

    let (lo, hi) = knots.domain(degree).unwrap();
    for t in linspace(lo, hi, 60) {
        for i in 0..basis.basis_count() {
            let direct = basis.eval_basis(i, t).unwrap();
            let reference = oracle.eval_basis(i, t).unwrap();
            assert!(
                (direct - reference).abs() < 1e-7,
                "i={i} t={t}: {direct} vs {reference}"
            );
        }
    }
}

/// One-sided limits of the derivatives up to order `p - k` agree at a knot
/// of multiplicity `k` (the basis is `C^{p-k}` there).
fn check_knot_smoothness(knots: &KnotVector, degree: usize, family: &KnotFunctionFamily) {
    let basis = build_basis_opts(knots, family, degree, ladder_opts()).unwrap();
    let k = knots.as_slice();
    let m = k.len();

    // Interior knot clusters strictly inside the domain.
    let (lo, hi) = knots.domain(degree).unwrap();
    let mut idx = 0;
    while idx < m {
        let value = k[idx];
        let mut mult = 1;
        while idx + mult < m && k[idx + mult] == value {
            mult += 1;
        }
        if value > lo && value < hi {
            let j_left = idx - 1; // interval ending at the cluster
            let j_right = idx + mult - 1; // interval starting at the cluster
            let h_left = knots.interval_len(j_left);
            assert!(h_left > 0.0 && knots.interval_len(j_right) > 0.0);
            let max_order = degree.saturating_sub(mult);
            for order in 0..=max_order {
                for i in 0..basis.basis_count() {
                    let left = basis
                        .derivative_on_interval(i, j_left, h_left, order)
                        .unwrap();
                    let right = basis.derivative_on_interval(i, j_right, 0.0, order).unwrap();
                    let scale = left.abs().max(right.abs()).max(1.0);
                    assert!(
                        (left - right).abs() < 1e-6 * scale,
                        "{} degree {degree}, knot {value} (mult {mult}), order {order}, \
                         i={i}: {left} vs {right}",
                        family.kind()
                    );
                }
            }
        }
        idx += mult;
    }
}

#[test]
fn smoothness_drops_with_knot_multiplicity() {
    let families = [
        KnotFunctionFamily::linear(),
        KnotFunctionFamily::trig(1.0),
        KnotFunctionFamily::exp(1.0),
    ];
    for family in &families {
        // Simple knots: C^{p-1}.
        check_knot_smoothness(&uniform_knot_vector(10), 3, family);
        // Multiplicity 2 at t = 2: C^1 for cubics.
        let double = KnotVector::new(vec![0.0, 0.5, 1.0, 2.0, 2.0, 3.0, 4.0, 4.5, 5.0]).unwrap();
        check_knot_smoothness(&double, 3, family);
        // Multiplicity 3 at t = 2: value-only continuity for cubics.
        let triple =
            KnotVector::new(vec![0.0, 0.5, 1.0, 2.0, 2.0, 2.0, 3.0, 4.0, 4.5, 5.0]).unwrap();
        check_knot_smoothness(&triple, 3, family);
    }
}

#[test]
fn derivative_ladder_chains_to_higher_orders() {
    // Second derivative of a cubic via the ladder against finite differences
    // of the first derivative.
    let knots = uniform_knot_vector(10);
    let basis =
        build_basis_opts(&knots, &KnotFunctionFamily::trig(0.8), 3, ladder_opts()).unwrap();
    for &t in &[3.3, 4.6, 5.2] {
        let j = knots.find_interval(t, 3, 1e-8).unwrap();
        let s = t - knots.as_slice()[j];
        for i in 0..basis.basis_count() {
            let d2 = basis.derivative_on_interval(i, j, s, 2).unwrap();
            let h = 1e-5;
            let fd = (basis.eval_basis_derivative(i, t + h).unwrap()
                - basis.eval_basis_derivative(i, t - h).unwrap())
                / (2.0 * h);
            let scale = d2.abs().max(1.0);
            assert!((d2 - fd).abs() / scale < 1e-5, "i={i} t={t}: {d2} vs {fd}");
        }
    }
}

#[test]
fn dumped_basis_evaluates_bit_for_bit() {
    let knots = KnotVector::new(vec![0.0, 0.0, 1.0, 2.0, 3.0, 4.0, 4.0]).unwrap();
    let family = KnotFunctionFamily::trig(1.3);
    let basis = build_basis(&knots, &family, 2).unwrap();
    let json = serde_json::to_string_pretty(&basis).unwrap();
    let loaded: gbspline::LocalBasis = serde_json::from_str(&json).unwrap();
    let (lo, hi) = knots.domain(2).unwrap();
    for t in linspace(lo, hi, 57) {
        for i in 0..basis.basis_count() {
            let a = basis.eval_basis(i, t).unwrap();
            let b = loaded.eval_basis(i, t).unwrap();
            assert!(a == b, "bitwise mismatch at i={i}, t={t}: {a:?} vs {b:?}");
        }
    }
}
