//! Ground-truth reference evaluators.
//!
//! [`RecursiveOracle`] computes GB-spline values by recursive numeric
//! integration of the defining recurrence: degree-1 functions come straight
//! from the normalized knot functions, and each higher degree integrates the
//! previous one (`Phi` ratios with step-function fallback on empty supports).
//! This route is intentionally slow and exists to verify the direct local
//! representation; memoized per-interval cumulative integrals keep it usable
//! at desk scale.
//!
//! [`cox_de_boor`] is an independent classical B-spline evaluator used as a
//! second reference for the polynomial-linear family.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::family::KnotFunctionFamily;
use crate::knots::{KnotVector, DEFAULT_TOL};
use crate::mat2::Mat2;
use crate::quad::adaptive_quadrature;

#[derive(Clone, Copy, Debug)]
pub struct QuadratureConfig {
    /// Absolute tolerance per integral; the accumulated error of a degree-p
    /// value grows with the recursion depth (roughly one factor of the
    /// inverse support integral per level).
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 40,
        }
    }
}

#[derive(Default)]
struct OracleCache {
    /// (degree, i) -> cumulative integrals of N_i at its support knots.
    cums: HashMap<(usize, usize), Vec<f64>>,
    /// (degree, i, t bits) -> Phi value.
    phi: HashMap<(usize, usize, u64), f64>,
}

/// Evaluates GB-spline basis functions by recursive quadrature.
pub struct RecursiveOracle {
    knots: KnotVector,
    family: KnotFunctionFamily,
    degree: usize,
    cfg: QuadratureConfig,
    tol: f64,
    /// Per-interval normalization `B_j` of the raw pair (zero when empty).
    norm: Vec<Mat2>,
    cache: RefCell<OracleCache>,
}

impl RecursiveOracle {
    pub fn new(
        knots: &KnotVector,
        family: &KnotFunctionFamily,
        degree: usize,
        cfg: QuadratureConfig,
    ) -> Result<Self> {
        knots.check_degree(degree)?;
        family.validate(knots, DEFAULT_TOL)?;
        let tol = DEFAULT_TOL;
        let mut norm = vec![Mat2::ZERO; knots.interval_count()];
        for (j, b) in norm.iter_mut().enumerate() {
            let h = knots.interval_len(j);
            if h <= tol {
                continue;
            }
            let (ul, vl) = family.integral_pair(0, 0.0)?;
            let (ur, vr) = family.integral_pair(0, h)?;
            let endpoint_matrix = Mat2([[ul, vl], [ur, vr]]);
            *b = endpoint_matrix
                .inverse(tol)
                .map_err(|_| Error::SingularOrIllConditioned { interval: Some(j) })?;
        }
        Ok(Self {
            knots: knots.clone(),
            family: family.clone(),
            degree,
            cfg,
            tol,
            norm,
            cache: RefCell::new(OracleCache::default()),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis_count(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    /// `N_i^p(t)` from the defining recurrence, including the stipulation
    /// that a last basis function discontinuous at the final knot takes the
    /// value 1 there.
    pub fn eval_basis(&self, i: usize, t: f64) -> Result<f64> {
        let n = self.basis_count();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, count: n });
        }
        let m = self.knots.len();
        let p = self.degree;
        if i == n - 1
            && t == self.knots[m - 1]
            && self.knots[m - p - 1] == self.knots[m - 1]
            && self.knots[m - p - 2] != self.knots[m - p - 1]
        {
            return Ok(1.0);
        }
        self.n_eval(p, i, t)
    }

    fn n_eval(&self, d: usize, i: usize, t: f64) -> Result<f64> {
        if d == 1 {
            self.n1(i, t)
        } else {
            Ok(self.phi(d - 1, i, t)? - self.phi(d - 1, i + 1, t)?)
        }
    }

    /// Degree-1 hat: the normalized `v_i` rising on `[t_i, t_{i+1})`, then
    /// the normalized `u_{i+1}` falling on `[t_{i+1}, t_{i+2})`.
    fn n1(&self, i: usize, t: f64) -> Result<f64> {
        let k = self.knots.as_slice();
        if t >= k[i] && t < k[i + 1] {
            let (u, v) = self.family.integral_pair(0, t - k[i])?;
            let b = self.norm[i].0;
            Ok(u * b[0][1] + v * b[1][1])
        } else if t >= k[i + 1] && t < k[i + 2] {
            let (u, v) = self.family.integral_pair(0, t - k[i + 1])?;
            let b = self.norm[i + 1].0;
            Ok(u * b[0][0] + v * b[1][0])
        } else {
            Ok(0.0)
        }
    }

    /// `Phi_i^d(t)`: the running integral of `N_i^d` normalized by its
    /// support integral, or the 0/1 step when that integral vanishes.
    fn phi(&self, d: usize, i: usize, t: f64) -> Result<f64> {
        let lo = self.knots[i];
        let hi = self.knots[i + d + 1];
        if hi - lo <= self.tol {
            return Ok(if t >= hi { 1.0 } else { 0.0 });
        }
        if t <= lo {
            return Ok(0.0);
        }
        if t >= hi {
            return Ok(1.0);
        }
        let key = (d, i, t.to_bits());
        if let Some(&v) = self.cache.borrow().phi.get(&key) {
            return Ok(v);
        }

        let cums = self.cums(d, i)?;
        let delta = *cums.last().expect("nonempty cumulative table");
        // Local interval within the support that contains t.
        let mut q = d;
        while q > 0 && t < self.knots[i + q] {
            q -= 1;
        }
        let partial = self.integrate_n(d, i, self.knots[i + q], t)?;
        let value = (cums[q] + partial) / delta;
        self.cache.borrow_mut().phi.insert(key, value);
        Ok(value)
    }

    /// Cumulative integrals of `N_i^d` at its support knots
    /// `t_i ..= t_{i+d+1}` (the last entry is `delta_i^d`).
    fn cums(&self, d: usize, i: usize) -> Result<Vec<f64>> {
        if let Some(v) = self.cache.borrow().cums.get(&(d, i)) {
            return Ok(v.clone());
        }
        let mut cums = Vec::with_capacity(d + 2);
        cums.push(0.0);
        let mut total = 0.0;
        for q in 0..=d {
            let a = self.knots[i + q];
            let b = self.knots[i + q + 1];
            if b - a > self.tol {
                total += self.integrate_n(d, i, a, b)?;
            }
            cums.push(total);
        }
        self.cache.borrow_mut().cums.insert((d, i), cums.clone());
        Ok(cums)
    }

    /// Integrates `N_i^d` over `[a, b]`, which must lie within one knot
    /// interval so the integrand is smooth.
    fn integrate_n(&self, d: usize, i: usize, a: f64, b: f64) -> Result<f64> {
        let mut f = |s: f64| self.n_eval(d, i, s);
        adaptive_quadrature(&mut f, a, b, self.cfg.abs_tol, self.cfg.max_depth)
    }
}

/// One-shot oracle evaluation. For repeated queries construct a
/// [`RecursiveOracle`] once so the memoized integrals amortize.
pub fn oracle_eval_basis(
    knots: &KnotVector,
    family: &KnotFunctionFamily,
    degree: usize,
    i: usize,
    t: f64,
    cfg: QuadratureConfig,
) -> Result<f64> {
    RecursiveOracle::new(knots, family, degree, cfg)?.eval_basis(i, t)
}

/// Classical Cox-de Boor B-spline basis value with the same half-open /
/// closed-right conventions as the direct evaluator.
pub fn cox_de_boor(knots: &KnotVector, degree: usize, i: usize, t: f64) -> f64 {
    let m = knots.len();
    assert!(i + degree + 1 < m, "basis index {i} out of range");
    let lo = knots[degree];
    let hi = knots[m - degree - 1];
    let closed_end = if lo < hi && t == hi {
        Some(knots.last_interval_before(hi))
    } else {
        None
    };
    cox_rec(knots, i, degree, t, closed_end)
}

fn cox_rec(knots: &KnotVector, i: usize, deg: usize, t: f64, closed_end: Option<usize>) -> f64 {
    if deg == 0 {
        return match closed_end {
            // Left-limit at the domain end: t belongs to the last nonempty
            // interval before it.
            Some(j_star) => {
                if i == j_star {
                    1.0
                } else {
                    0.0
                }
            }
            None => {
                if knots[i] <= t && t < knots[i + 1] {
                    1.0
                } else {
                    0.0
                }
            }
        };
    }
    let mut value = 0.0;
    let left_den = knots[i + deg] - knots[i];
    if left_den > 0.0 {
        value += (t - knots[i]) / left_den * cox_rec(knots, i, deg - 1, t, closed_end);
    }
    let right_den = knots[i + deg + 1] - knots[i + 1];
    if right_den > 0.0 {
        value +=
            (knots[i + deg + 1] - t) / right_den * cox_rec(knots, i + 1, deg - 1, t, closed_end);
    }
    value
}
