//! Power-basis polynomials in local interval coordinates `s = t - t_j`.
//!
//! The power basis keeps constant offsets and the +1 bookkeeping of the
//! builder single-coefficient updates; a bounded basis (Bernstein, Chebyshev)
//! could be swapped in behind the same operations.

use serde::{Deserialize, Serialize};

/// `c_0 + c_1 s + ... + c_{q-1} s^{q-1}`. An empty coefficient vector is the
/// zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LocalPoly {
    coeffs: Vec<f64>,
}

impl LocalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation at the local coordinate `s`.
    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    /// Antiderivative anchored at zero: the result vanishes at `s = 0` and is
    /// one coefficient longer than the input.
    pub fn integral(&self) -> LocalPoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (k + 1) as f64);
        }
        LocalPoly { coeffs }
    }

    /// Adds `c` to the constant term, promoting the zero polynomial to `[c]`.
    pub fn offset_constant(&mut self, c: f64) {
        if self.coeffs.is_empty() {
            self.coeffs.push(c);
        } else {
            self.coeffs[0] += c;
        }
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for c in &mut self.coeffs {
            *c *= factor;
        }
    }

    /// `self += factor * other`, growing the coefficient vector as needed.
    pub(crate) fn add_scaled(&mut self, other: &LocalPoly, factor: f64) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0.0);
        }
        for (dst, &src) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *dst += factor * src;
        }
    }
}
