//! Knot vectors: validation, interval lookup, and windowed re-indexing.
//!
//! Intervals are half-open `[t_j, t_{j+1})` everywhere except the final
//! nonempty interval of the curve domain, which is treated as closed on the
//! right so that the basis takes its left-limit values at the last domain
//! knot.

use std::ops::Index;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default tolerance for interval-emptiness and conditioning tests.
pub const DEFAULT_TOL: f64 = 1e-8;

/// A validated nondecreasing sequence of parameter values.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotVector {
    knots: Vec<f64>,
}

impl KnotVector {
    /// Validates and wraps a knot sequence. Repeated knots are allowed;
    /// decreasing steps and non-finite values are rejected.
    pub fn new(knots: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::TooFewKnots {
                required: 2,
                actual: knots.len(),
            });
        }
        for (index, &k) in knots.iter().enumerate() {
            if !k.is_finite() {
                return Err(Error::NonFiniteKnot { index });
            }
        }
        for index in 1..knots.len() {
            if knots[index] < knots[index - 1] {
                return Err(Error::NotNondecreasing {
                    index,
                    prev: knots[index - 1],
                    next: knots[index],
                });
            }
        }
        Ok(Self { knots })
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        false // validated to hold at least 2 knots
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.knots
    }

    /// Number of intervals `[t_j, t_{j+1})`, i.e. `m - 1`.
    pub fn interval_count(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn interval_len(&self, j: usize) -> f64 {
        self.knots[j + 1] - self.knots[j]
    }

    pub fn is_nonempty_interval(&self, j: usize, tol: f64) -> bool {
        self.interval_len(j) > tol
    }

    /// Lengths of all intervals (the paper's `Tlens`).
    pub fn interval_lengths(&self) -> Vec<f64> {
        self.knots.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Checks that a degree-`degree` basis exists on this vector
    /// (`n = m - p - 1 >= 1`).
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree == 0 || self.knots.len() < degree + 2 {
            return Err(Error::DegreeTooLargeForKnots {
                degree,
                required: degree + 2,
                actual: self.knots.len(),
            });
        }
        Ok(())
    }

    /// The curve domain `[t_p, t_{m-p-1}]` for a degree-`degree` basis.
    pub fn domain(&self, degree: usize) -> Result<(f64, f64)> {
        self.check_degree(degree)?;
        let m = self.knots.len();
        Ok((self.knots[degree], self.knots[m - degree - 1]))
    }

    /// Finds the interval index `j` with `t in [t_j, t_{j+1})` inside the
    /// degree-`degree` curve domain. At the right domain endpoint the last
    /// nonempty interval inside the domain is returned (closed-right
    /// convention). Parameters within `tol` of the domain are clamped.
    pub fn find_interval(&self, t: f64, degree: usize, tol: f64) -> Result<usize> {
        let (lo, hi) = self.domain(degree)?;
        if !(lo < hi) {
            return Err(Error::OutOfDomain { t, lo, hi });
        }
        if t < lo - tol || t > hi + tol {
            return Err(Error::OutOfDomain { t, lo, hi });
        }
        let t = t.clamp(lo, hi);
        if t >= hi {
            return Ok(self.last_interval_before(hi));
        }
        // Rightmost j with t_j <= t; the interval is nonempty because
        // t < t_{j+1} by maximality.
        let j = self.knots.partition_point(|&k| k <= t) - 1;
        Ok(j)
    }

    /// Index of the nonempty interval whose right endpoint is `end`
    /// (`end` must be a knot value with some knot strictly below it).
    pub(crate) fn last_interval_before(&self, end: f64) -> usize {
        self.knots.partition_point(|&k| k < end) - 1
    }

    /// Rightmost interval index `j` with `t_j <= t`, ignoring any domain.
    /// Returns `None` when `t` lies left of the first knot or when no knot
    /// beyond index `j` exists.
    pub(crate) fn locate(&self, t: f64) -> Option<usize> {
        if t < self.knots[0] {
            return None;
        }
        let j = self.knots.partition_point(|&k| k <= t) - 1;
        if j + 1 >= self.knots.len() {
            None
        } else {
            Some(j)
        }
    }
}

impl Index<usize> for KnotVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.knots[index]
    }
}

impl Serialize for KnotVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.knots.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KnotVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let knots = Vec::<f64>::deserialize(deserializer)?;
        KnotVector::new(knots).map_err(D::Error::custom)
    }
}

/// Sliding windows of width `width` over `values`: `out[i][k] = values[i + k]`.
///
/// Window `i` lines interval-indexed data up with the support intervals of
/// basis function `i` (the paper's `Wrap`).
pub fn wrap_windows<T: Clone>(values: &[T], width: usize) -> Result<Vec<Vec<T>>> {
    if width == 0 || width > values.len() {
        return Err(Error::WidthTooLarge {
            width,
            len: values.len(),
        });
    }
    Ok(values.windows(width).map(|w| w.to_vec()).collect())
}
