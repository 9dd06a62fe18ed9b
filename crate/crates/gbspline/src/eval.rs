//! Direct evaluation of basis functions, curves, and derivatives from a
//! [`LocalBasis`]: interval lookup, one polynomial evaluation, and two
//! knot-function integral evaluations per point.

use crate::builder::LocalBasis;
use crate::error::{Error, Result};

impl LocalBasis {
    /// Value of basis function `i` at `t`. Exactly zero outside the support
    /// `[t_i, t_{i+p+1})`; at the right end of a proper curve domain the
    /// closed-right convention applies so the left-limit value is returned
    /// (giving the last basis function its value 1 on open knot vectors).
    pub fn eval_basis(&self, i: usize, t: f64) -> Result<f64> {
        let n = self.basis_count();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, count: n });
        }
        self.basis_value(i, t)
    }

    pub(crate) fn basis_value(&self, i: usize, t: f64) -> Result<f64> {
        let p = self.degree;
        let knots = &self.knots;
        let m = knots.len();

        let dom_lo = knots[p];
        let dom_hi = knots[m - p - 1];
        if dom_lo < dom_hi && t == dom_hi {
            if self.vanishes_at(i, dom_hi) {
                return Ok(0.0);
            }
            let j = knots.last_interval_before(dom_hi);
            return self.slot_value(i, j, knots.interval_len(j));
        }

        if t < knots[i] || t >= knots[i + p + 1] {
            return Ok(0.0);
        }
        match knots.locate(t) {
            Some(j) => self.slot_value(i, j, t - knots[j]),
            None => Ok(0.0),
        }
    }

    /// Whether the left-limit of function `i` at the domain end `dom_hi` is
    /// exactly zero: true when its support ends there and its trailing knots
    /// are not fully collapsed (the function is then continuous at its
    /// support end and decays to zero, so roundoff must not leak through).
    fn vanishes_at(&self, i: usize, dom_hi: f64) -> bool {
        self.knots[i + self.degree + 1] == dom_hi && self.knots[i + 1] < dom_hi
    }

    /// Local-representation value of function `i` on interval `j`; zero when
    /// the interval lies outside the function's support slots.
    fn slot_value(&self, i: usize, j: usize, s: f64) -> Result<f64> {
        if j < i || j > i + self.degree {
            return Ok(0.0);
        }
        let slot = j - i;
        let [a, b] = self.genfunc[i][slot];
        let (u, v) = self.family.integral_pair(self.degree - 1, s)?;
        Ok(self.polys[i][slot].eval(s) + a * u + b * v)
    }

    /// Value of function `i` restricted to interval `j` at local coordinate
    /// `s`, without any support or domain conventions. `s = 0` / `s = h_j`
    /// give exact one-sided limits at the knots.
    pub fn value_on_interval(&self, i: usize, j: usize, s: f64) -> Result<f64> {
        let (poly, gen) = self.parts_on_interval(i, j, s)?;
        Ok(poly + gen)
    }

    /// The polynomial and general-function parts of the local representation
    /// of function `i` on interval `j`, separately.
    pub fn parts_on_interval(&self, i: usize, j: usize, s: f64) -> Result<(f64, f64)> {
        let n = self.basis_count();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, count: n });
        }
        if j >= self.knots.interval_count() {
            return Err(Error::IndexOutOfRange {
                index: j,
                count: self.knots.interval_count(),
            });
        }
        let h = self.knots.interval_len(j);
        let slack = 1e-9 * h.max(1.0);
        if s < -slack || s > h + slack {
            return Err(Error::OutOfInterval { s, len: h });
        }
        if j < i || j > i + self.degree {
            return Ok((0.0, 0.0));
        }
        let slot = j - i;
        let [a, b] = self.genfunc[i][slot];
        let (u, v) = self.family.integral_pair(self.degree - 1, s)?;
        Ok((self.polys[i][slot].eval(s), a * u + b * v))
    }

    /// Values of the `p + 1` basis functions supported on the interval
    /// containing `t`, together with the index of the first one. `t` must lie
    /// in the curve domain.
    pub fn eval_basis_row(&self, t: f64) -> Result<(usize, Vec<f64>)> {
        let j = self.knots.find_interval(t, self.degree, self.tol)?;
        let h = self.knots.interval_len(j);
        let s = (t - self.knots[j]).clamp(0.0, h);
        let first = j - self.degree;
        let mut values = Vec::with_capacity(self.degree + 1);
        for i in first..=j {
            values.push(self.slot_value(i, j, s)?);
        }
        Ok((first, values))
    }

    /// First derivative of basis function `i` at `t`, from the one-degree-down
    /// ladder: `N_i^{p-1}/delta_i - N_{i+1}^{p-1}/delta_{i+1}` with zero-delta
    /// terms dropped. At knots where the derivative does not exist the
    /// right-limit value is returned.
    pub fn eval_basis_derivative(&self, i: usize, t: f64) -> Result<f64> {
        let n = self.basis_count();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, count: n });
        }
        let (lower, deltas) = self.lower_level().ok_or(Error::LadderMissing)?;
        let mut out = 0.0;
        if deltas[i] > 0.0 {
            out += lower.basis_value(i, t)? / deltas[i];
        }
        if deltas[i + 1] > 0.0 {
            out -= lower.basis_value(i + 1, t)? / deltas[i + 1];
        }
        Ok(out)
    }

    /// Order-`order` derivative of function `i` restricted to interval `j`,
    /// chaining down the retained ladder. Exact one-sided limits at knots.
    pub fn derivative_on_interval(&self, i: usize, j: usize, s: f64, order: usize) -> Result<f64> {
        if order == 0 {
            return if i >= self.basis_count() {
                Ok(0.0)
            } else {
                self.value_on_interval(i, j, s)
            };
        }
        let (lower, deltas) = self.lower_level().ok_or(Error::LadderMissing)?;
        let mut out = 0.0;
        if i < deltas.len() && deltas[i] > 0.0 {
            out += lower.derivative_on_interval(i, j, s, order - 1)? / deltas[i];
        }
        if i + 1 < deltas.len() && deltas[i + 1] > 0.0 {
            out -= lower.derivative_on_interval(i + 1, j, s, order - 1)? / deltas[i + 1];
        }
        Ok(out)
    }
}

/// A GB-spline curve: a basis plus `n = m - p - 1` control points in
/// d-dimensional space, defined on `[t_p, t_{m-p-1}]`.
#[derive(Clone, Debug)]
pub struct GBSplineCurve {
    basis: LocalBasis,
    control_points: Vec<Vec<f64>>,
    dim: usize,
}

impl GBSplineCurve {
    pub fn new(basis: LocalBasis, control_points: Vec<Vec<f64>>) -> Result<Self> {
        let expected = basis.basis_count();
        if control_points.len() != expected {
            return Err(Error::ControlPointCount {
                expected,
                actual: control_points.len(),
            });
        }
        let dim = control_points[0].len();
        if dim == 0 || control_points.iter().any(|p| p.len() != dim) {
            return Err(Error::ControlPointDimension);
        }
        Ok(Self {
            basis,
            control_points,
            dim,
        })
    }

    pub fn basis(&self) -> &LocalBasis {
        &self.basis
    }

    pub fn control_points(&self) -> &[Vec<f64>] {
        &self.control_points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Result<(f64, f64)> {
        self.basis.knots().domain(self.basis.degree())
    }

    /// `f(t) = sum_i a_i N_i(t)` over the active window.
    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        let (first, row) = self.basis.eval_basis_row(t)?;
        let mut point = vec![0.0; self.dim];
        for (k, &w) in row.iter().enumerate() {
            for (axis, coord) in point.iter_mut().zip(&self.control_points[first + k]) {
                *axis += w * coord;
            }
        }
        Ok(point)
    }

    /// Curve derivative via the ladder, regrouped per lower-degree function:
    /// `f'(t) = sum_j (a_j - a_{j-1}) / delta_j * N_j^{p-1}(t)` with control
    /// points outside `0..n` taken as zero and zero-delta terms dropped.
    pub fn derivative(&self, t: f64) -> Result<Vec<f64>> {
        let basis = &self.basis;
        // Enforce the curve domain before consulting the (wider) lower basis.
        basis.knots().find_interval(t, basis.degree(), basis.tol())?;
        let (lower, deltas) = basis.lower_level().ok_or(Error::LadderMissing)?;
        let (first, row) = lower.eval_basis_row(t)?;
        let n = self.control_points.len();
        let mut point = vec![0.0; self.dim];
        for (k, &w) in row.iter().enumerate() {
            let j = first + k;
            if deltas[j] <= 0.0 {
                continue;
            }
            let scale = w / deltas[j];
            for axis in 0..self.dim {
                let a_j = if j < n { self.control_points[j][axis] } else { 0.0 };
                let a_prev = if j >= 1 && j - 1 < n {
                    self.control_points[j - 1][axis]
                } else {
                    0.0
                };
                point[axis] += scale * (a_j - a_prev);
            }
        }
        Ok(point)
    }
}
