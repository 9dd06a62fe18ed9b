//! Knot-function families: the raw pair `(u, v)` on each interval and their
//! iterated integrals in local coordinates.
//!
//! Families supply *raw* functions; the builder normalizes them per interval
//! with a 2x2 change of basis so that `u` runs 1 -> 0 and `v` runs 0 -> 1
//! across the interval. Raw pairs are chosen so their integrals stay closed
//! form:
//!
//! * linear:        `(1, s)`            -- recovers ordinary B-splines
//! * trigonometric: `(cos ws, sin ws)`  -- requires `w * h < pi` per interval
//! * exponential:   `(cosh ws, sinh ws)`
//! * generic:       arbitrary callables of the local coordinate, integrated
//!   by adaptive quadrature
//!
//! The same raw pair is used at every degree; these families are closed under
//! differentiation, so the degree-p basis locally spans
//! `{1, t, ..., t^{p-2}, u, v}` in the original functions.
//!
//! All iterated integrals are anchored at the local origin: every order >= 1
//! vanishes at `s = 0`.

use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::knots::KnotVector;
use crate::poly::LocalPoly;
use crate::quad::adaptive_quadrature;

/// Default absolute tolerance for generic-family quadrature.
pub const GENERIC_QUAD_TOL: f64 = 1e-10;
const GENERIC_QUAD_MAX_DEPTH: u32 = 40;

/// User-supplied raw knot functions of the local coordinate.
#[derive(Clone)]
pub struct GenericPair {
    u: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    v: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    quad_tol: f64,
}

impl fmt::Debug for GenericPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenericPair")
            .field("quad_tol", &self.quad_tol)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum KnotFunctionFamily {
    /// Raw pair `(1, s)`.
    Linear,
    /// Raw pair `(cos(omega s), sin(omega s))`.
    Trig { omega: f64 },
    /// Raw pair `(cosh(omega s), sinh(omega s))`.
    Exp { omega: f64 },
    /// Numeric callables integrated by adaptive quadrature.
    Generic(GenericPair),
}

impl KnotFunctionFamily {
    pub fn linear() -> Self {
        Self::Linear
    }

    pub fn trig(omega: f64) -> Self {
        Self::Trig { omega }
    }

    pub fn exp(omega: f64) -> Self {
        Self::Exp { omega }
    }

    pub fn generic<U, V>(u: U, v: V, quad_tol: f64) -> Self
    where
        U: Fn(f64) -> f64 + Send + Sync + 'static,
        V: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::Generic(GenericPair {
            u: Arc::new(u),
            v: Arc::new(v),
            quad_tol,
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::Trig { .. } => "trig",
            Self::Exp { .. } => "exp",
            Self::Generic(_) => "generic",
        }
    }

    /// Checks the Chebyshev-space requirement on every nonempty interval of
    /// `knots`. For the trigonometric pair this is `|omega| * h < pi`; the
    /// other closed-form pairs only need a nonzero parameter. Generic pairs
    /// are taken on trust here; the endpoint-matrix conditioning guard in the
    /// builder catches practical violations.
    pub fn validate(&self, knots: &KnotVector, tol: f64) -> Result<()> {
        let first_nonempty = (0..knots.interval_count())
            .find(|&j| knots.is_nonempty_interval(j, tol));
        let degenerate = |reason: String| Error::ChebyshevViolation {
            interval: first_nonempty.unwrap_or(0),
            reason,
        };
        match self {
            Self::Linear | Self::Generic(_) => Ok(()),
            Self::Trig { omega } => {
                if !omega.is_finite() || *omega == 0.0 {
                    return Err(degenerate(format!(
                        "sin({omega} s) is degenerate; omega must be finite and nonzero"
                    )));
                }
                for j in 0..knots.interval_count() {
                    let h = knots.interval_len(j);
                    if h > tol && omega.abs() * h >= std::f64::consts::PI {
                        return Err(Error::ChebyshevViolation {
                            interval: j,
                            reason: format!(
                                "omega * h = {} >= pi; the pair (cos, sin) admits a \
                                 combination with two roots on the interval",
                                omega.abs() * h
                            ),
                        });
                    }
                }
                Ok(())
            }
            Self::Exp { omega } => {
                if !omega.is_finite() || *omega == 0.0 {
                    return Err(degenerate(format!(
                        "sinh({omega} s) is degenerate; omega must be finite and nonzero"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Raw order-`k` integrals `(u^[k](s), v^[k](s))`, unchecked.
    pub(crate) fn integral_pair(&self, k: usize, s: f64) -> Result<(f64, f64)> {
        match self {
            Self::Linear => {
                // u^[k] = s^k / k!, v^[k] = s^{k+1} / (k+1)!
                let uk = s.powi(k as i32) / factorial(k);
                let vk = s.powi(k as i32 + 1) / factorial(k + 1);
                Ok((uk, vk))
            }
            Self::Trig { omega } => {
                let (au, bu, qu) = trig_rep(*omega, k, true);
                let (av, bv, qv) = trig_rep(*omega, k, false);
                let (c, sn) = ((omega * s).cos(), (omega * s).sin());
                Ok((
                    au * c + bu * sn + qu.eval(s),
                    av * c + bv * sn + qv.eval(s),
                ))
            }
            Self::Exp { omega } => {
                let (au, bu, qu) = exp_rep(*omega, k, true);
                let (av, bv, qv) = exp_rep(*omega, k, false);
                let (ch, sh) = ((omega * s).cosh(), (omega * s).sinh());
                Ok((
                    au * ch + bu * sh + qu.eval(s),
                    av * ch + bv * sh + qv.eval(s),
                ))
            }
            Self::Generic(pair) => Ok((
                cauchy_integral(&*pair.u, k, s, pair.quad_tol)?,
                cauchy_integral(&*pair.v, k, s, pair.quad_tol)?,
            )),
        }
    }

    /// Order-`k` integrals of the raw pair at local coordinate `s` on an
    /// interval of length `h`, with the same anchoring as [`IntegralTable`].
    pub fn eval_integral(&self, k: usize, s: f64, h: f64) -> Result<(f64, f64)> {
        let slack = 1e-9 * h.abs().max(1.0);
        if s < -slack || s > h + slack {
            return Err(Error::OutOfInterval { s, len: h });
        }
        self.integral_pair(k, s.clamp(0.0, h.max(0.0)))
    }

    /// Endpoint values of the iterated raw integrals on every interval, for
    /// all orders `0..degree` (the paper's `ints` array).
    pub fn integral_table(
        &self,
        knots: &KnotVector,
        degree: usize,
        tol: f64,
    ) -> Result<IntegralTable> {
        if degree == 0 {
            return Err(Error::DegreeTooLargeForKnots {
                degree,
                required: 2,
                actual: knots.len(),
            });
        }
        self.validate(knots, tol)?;
        let mut orders = Vec::with_capacity(degree);
        for k in 0..degree {
            let mut per_interval = Vec::with_capacity(knots.interval_count());
            for j in 0..knots.interval_count() {
                let h = knots.interval_len(j);
                let (ul, vl) = self.integral_pair(k, 0.0)?;
                let (ur, vr) = self.integral_pair(k, h)?;
                per_interval.push([[ul, vl], [ur, vr]]);
            }
            orders.push(per_interval);
        }
        Ok(IntegralTable { orders })
    }
}

/// Endpoint values of the iterated knot-function integrals, indexed by
/// (order, interval, endpoint, function) with `u` first on the last axis.
/// Every order >= 1 is zero at the left endpoint (anchored integrals).
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralTable {
    orders: Vec<Vec<[[f64; 2]; 2]>>,
}

impl IntegralTable {
    pub fn order_count(&self) -> usize {
        self.orders.len()
    }

    pub fn interval_count(&self) -> usize {
        self.orders.first().map_or(0, Vec::len)
    }

    /// `[[u_left, v_left], [u_right, v_right]]` of order `k` on interval `j`.
    pub fn values(&self, k: usize, j: usize) -> [[f64; 2]; 2] {
        self.orders[k][j]
    }

    pub(crate) fn order(&self, k: usize) -> &[[[f64; 2]; 2]] {
        &self.orders[k]
    }

    pub(crate) fn from_orders(orders: Vec<Vec<[[f64; 2]; 2]>>) -> Self {
        Self { orders }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Representation `alpha*cos(ws) + beta*sin(ws) + q(s)` of the k-th anchored
/// integral of `cos(ws)` (`cos_first`) or `sin(ws)`.
fn trig_rep(omega: f64, k: usize, cos_first: bool) -> (f64, f64, LocalPoly) {
    let (mut alpha, mut beta) = if cos_first { (1.0, 0.0) } else { (0.0, 1.0) };
    let mut q = LocalPoly::zero();
    for _ in 0..k {
        let next_alpha = -beta / omega;
        let next_beta = alpha / omega;
        let mut next_q = q.integral();
        next_q.offset_constant(beta / omega);
        alpha = next_alpha;
        beta = next_beta;
        q = next_q;
    }
    (alpha, beta, q)
}

/// Same as [`trig_rep`] for `cosh`/`sinh`.
fn exp_rep(omega: f64, k: usize, cosh_first: bool) -> (f64, f64, LocalPoly) {
    let (mut alpha, mut beta) = if cosh_first { (1.0, 0.0) } else { (0.0, 1.0) };
    let mut q = LocalPoly::zero();
    for _ in 0..k {
        let next_alpha = beta / omega;
        let next_beta = alpha / omega;
        let mut next_q = q.integral();
        next_q.offset_constant(-beta / omega);
        alpha = next_alpha;
        beta = next_beta;
        q = next_q;
    }
    (alpha, beta, q)
}

/// k-th anchored iterated integral by the Cauchy repeated-integration
/// formula: one quadrature of `(s - x)^{k-1}/(k-1)! * f(x)` over `[0, s]`
/// instead of k nested passes.
fn cauchy_integral(f: &dyn Fn(f64) -> f64, k: usize, s: f64, quad_tol: f64) -> Result<f64> {
    if k == 0 {
        return Ok(f(s));
    }
    let norm = factorial(k - 1);
    let mut integrand = |x: f64| Ok((s - x).powi(k as i32 - 1) / norm * f(x));
    adaptive_quadrature(&mut integrand, 0.0, s, quad_tol, GENERIC_QUAD_MAX_DEPTH)
}

impl Serialize for KnotFunctionFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("kind", self.kind())?;
        match self {
            Self::Trig { omega } | Self::Exp { omega } => {
                map.serialize_entry("omega", omega)?;
            }
            Self::Linear | Self::Generic(_) => {}
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for KnotFunctionFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Descriptor {
            kind: String,
            #[serde(default)]
            omega: Option<f64>,
        }
        let d = Descriptor::deserialize(deserializer)?;
        let need_omega = |omega: Option<f64>| {
            omega.ok_or_else(|| D::Error::custom(format!("family {:?} needs omega", d.kind)))
        };
        match d.kind.as_str() {
            "linear" => Ok(Self::Linear),
            "trig" => Ok(Self::Trig {
                omega: need_omega(d.omega)?,
            }),
            "exp" => Ok(Self::Exp {
                omega: need_omega(d.omega)?,
            }),
            "generic" => Err(D::Error::custom(
                "generic families hold callables and cannot be rebuilt from a descriptor",
            )),
            other => Err(D::Error::custom(format!("unknown family kind {other:?}"))),
        }
    }
}
