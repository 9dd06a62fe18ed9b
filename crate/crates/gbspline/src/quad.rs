//! Adaptive Gauss-Kronrod (G7/K15) quadrature.
//!
//! Used by the generic knot-function family and by the recursive oracle. The
//! integrands there are analytic within a single knot interval, so one panel
//! usually converges; bisection handles the rest.

use crate::error::{Error, Result};

// K15 nodes on [0, 1] of the positive half-axis (symmetric rule), QUADPACK
// values. Even indices are the embedded G7 nodes.
const XGK: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

const WGK: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

const WG: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

/// One G7/K15 panel over `[a, b]`: returns the K15 value and the |K15 - G7|
/// error estimate.
fn panel<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center)?;
    let mut kronrod = WGK[0] * fc;
    let mut gauss = WG[0] * fc;
    for i in 1..8 {
        let dx = half * XGK[i];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[i] * pair;
        if i % 2 == 0 {
            gauss += WG[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    Ok((kronrod, (kronrod - gauss).abs()))
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`, bisecting
/// panels whose error estimate exceeds their share of the budget.
pub(crate) fn adaptive_quadrature<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    fn go<F: FnMut(f64) -> Result<f64>>(
        f: &mut F,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let (value, err) = panel(f, a, b)?;
        if err <= tol || err <= f64::EPSILON * value.abs() {
            return Ok(value);
        }
        if depth == 0 {
            return Err(Error::QuadratureFailure {
                tol,
                estimate: err,
            });
        }
        let mid = 0.5 * (a + b);
        let left = go(f, a, mid, 0.5 * tol, depth - 1)?;
        let right = go(f, mid, b, 0.5 * tol, depth - 1)?;
        Ok(left + right)
    }
    go(f, a, b, abs_tol, max_depth)
}
