//! 2x2 linear algebra for the knot-function endpoint systems.
//!
//! Rows index interval endpoints (left, right); columns index the two knot
//! functions (`u` first). Nothing larger than 2x2 is ever needed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[0.0; 2]; 2]);
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn mul_vec(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// Direct 2x2 inverse with a conditioning guard:
    /// `|det| > tol * max_row_norm^2` must hold.
    pub fn inverse(&self, tol: f64) -> Result<Mat2> {
        let det = self.det();
        let r0 = self.0[0][0].hypot(self.0[0][1]);
        let r1 = self.0[1][0].hypot(self.0[1][1]);
        let scale = r0.max(r1);
        if !(det.abs() > tol * scale * scale) {
            return Err(Error::SingularOrIllConditioned { interval: None });
        }
        let inv = 1.0 / det;
        Ok(Mat2([
            [self.0[1][1] * inv, -self.0[0][1] * inv],
            [-self.0[1][0] * inv, self.0[0][0] * inv],
        ]))
    }
}
