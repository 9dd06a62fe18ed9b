//! Local piecewise representations of generalized B-spline (GB-spline)
//! bases, with direct evaluation of basis functions, curves, and derivatives.
//!
//! GB-splines generalize B-splines: on each knot interval the basis spans
//! `{1, t, ..., t^{p-2}, u, v}` for a pair of knot functions forming a
//! Chebyshev space (trigonometric and exponential pairs give exact circles,
//! helices, and catenaries; the linear pair recovers ordinary B-splines).
//! Evaluating them from the defining recurrence requires nested numeric
//! integration. This crate instead builds, once per basis, a local
//! representation per support interval -- a small polynomial plus two
//! knot-function coefficients -- after which evaluation is an interval
//! lookup, a Horner evaluation, and two function evaluations.
//!
//! * [`builder::build_basis`] constructs the representation.
//! * [`LocalBasis::eval_basis`] / [`GBSplineCurve::eval`] evaluate directly.
//! * [`oracle::RecursiveOracle`] and [`oracle::cox_de_boor`] provide slow
//!   reference evaluators used for verification.

pub mod builder;
pub mod error;
pub mod eval;
pub mod family;
pub mod knots;
pub mod mat2;
pub mod oracle;
pub mod poly;
mod quad;

pub use builder::{build_basis, build_basis_opts, BuildOptions, LocalBasis};
pub use error::{Error, Result};
pub use eval::GBSplineCurve;
pub use family::{IntegralTable, KnotFunctionFamily};
pub use knots::{wrap_windows, KnotVector, DEFAULT_TOL};
pub use mat2::Mat2;
pub use oracle::{cox_de_boor, oracle_eval_basis, QuadratureConfig, RecursiveOracle};
