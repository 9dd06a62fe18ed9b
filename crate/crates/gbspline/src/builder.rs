//! Constructs the local piecewise representation of a GB-spline basis.
//!
//! The degree-p basis is built from the degree-1 basis by iterated
//! integration and differencing. On each nonempty interval `j` of its
//! support, basis function `i` is stored as
//!
//! ```text
//! N_i(t) = P[i][j-i](s) + a * u^[p-1](s) + b * v^[p-1](s),   s = t - t_j
//! ```
//!
//! where `u^[p-1]`, `v^[p-1]` are the iterated raw knot-function integrals
//! and `(a, b)` are the general-function coefficients. Once built, evaluation
//! needs one interval lookup, one polynomial evaluation, and two
//! knot-function evaluations; no recursion or integration remains.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::family::{IntegralTable, KnotFunctionFamily};
use crate::knots::{wrap_windows, KnotVector, DEFAULT_TOL};
use crate::mat2::Mat2;
use crate::poly::LocalPoly;

pub(crate) type Polys = Vec<Vec<LocalPoly>>;
pub(crate) type GenCoefs = Vec<Vec<[f64; 2]>>;
/// `[[u_left, v_left], [u_right, v_right]]` of one integral order on one
/// interval.
type EndpointVals = [[f64; 2]; 2];

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Emptiness / conditioning tolerance.
    pub tol: f64,
    /// Keep the bases of degrees `1..p` and their support integrals; needed
    /// by the derivative formulas.
    pub retain_ladder: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            retain_ladder: false,
        }
    }
}

/// The local piecewise representation of a GB-spline basis.
#[derive(Clone, Debug, Serialize)]
pub struct LocalBasis {
    pub(crate) degree: usize,
    pub(crate) knots: KnotVector,
    pub(crate) family: KnotFunctionFamily,
    /// Per basis function, per support interval slot (slot `j'` covers the
    /// global interval `i + j'`).
    pub(crate) polys: Polys,
    /// `(a, b)` pairs multiplying the order-(p-1) raw integrals, same layout
    /// as `polys`.
    pub(crate) genfunc: GenCoefs,
    /// Per-interval change-of-basis matrices used during construction
    /// (zero on empty intervals).
    pub(crate) scal: Vec<Mat2>,
    #[serde(skip)]
    pub(crate) ladder: Option<Box<LadderLevel>>,
    #[serde(skip)]
    pub(crate) tol: f64,
}

/// One rung of the degree ladder: the basis one degree down together with
/// its support integrals `delta_i`.
#[derive(Clone, Debug)]
pub(crate) struct LadderLevel {
    pub(crate) lower: LocalBasis,
    pub(crate) lower_deltas: Vec<f64>,
}

impl LocalBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn family(&self) -> &KnotFunctionFamily {
        &self.family
    }

    /// Number of basis functions, `n = m - p - 1`.
    pub fn basis_count(&self) -> usize {
        self.polys.len()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Polynomial part of function `i` on support slot `j'`.
    pub fn poly(&self, i: usize, slot: usize) -> &LocalPoly {
        &self.polys[i][slot]
    }

    /// General-function coefficients `(a, b)` of function `i` on slot `j'`.
    pub fn gen_coefs(&self, i: usize, slot: usize) -> [f64; 2] {
        self.genfunc[i][slot]
    }

    pub fn scaling(&self, interval: usize) -> Mat2 {
        self.scal[interval]
    }

    pub fn has_ladder(&self) -> bool {
        self.ladder.is_some()
    }

    /// The degree-(p-1) basis and its support integrals, when retained.
    pub fn lower_level(&self) -> Option<(&LocalBasis, &[f64])> {
        self.ladder
            .as_deref()
            .map(|level| (&level.lower, level.lower_deltas.as_slice()))
    }

    fn validate_shape(&self) -> Result<()> {
        self.knots.check_degree(self.degree)?;
        let n = self.knots.len() - self.degree - 1;
        let slots = self.degree + 1;
        if self.polys.len() != n || self.genfunc.len() != n {
            return Err(Error::InvalidBasisData(format!(
                "expected {n} basis functions, got {} polys / {} genfunc rows",
                self.polys.len(),
                self.genfunc.len()
            )));
        }
        for (prow, grow) in self.polys.iter().zip(&self.genfunc) {
            if prow.len() != slots || grow.len() != slots {
                return Err(Error::InvalidBasisData(format!(
                    "every basis function needs {slots} interval slots"
                )));
            }
            let finite = prow
                .iter()
                .flat_map(|p| p.coeffs().iter())
                .chain(grow.iter().flatten())
                .all(|c| c.is_finite());
            if !finite {
                return Err(Error::InvalidBasisData(
                    "non-finite coefficient".to_string(),
                ));
            }
        }
        if self.scal.len() != self.knots.interval_count() {
            return Err(Error::InvalidBasisData(format!(
                "expected {} scaling matrices, got {}",
                self.knots.interval_count(),
                self.scal.len()
            )));
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for LocalBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degree: usize,
            knots: KnotVector,
            family: KnotFunctionFamily,
            polys: Polys,
            genfunc: GenCoefs,
            scal: Vec<Mat2>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let basis = LocalBasis {
            degree: raw.degree,
            knots: raw.knots,
            family: raw.family,
            polys: raw.polys,
            genfunc: raw.genfunc,
            scal: raw.scal,
            ladder: None,
            tol: DEFAULT_TOL,
        };
        basis.validate_shape().map_err(D::Error::custom)?;
        Ok(basis)
    }
}

/// Builds the degree-`degree` basis with default options.
pub fn build_basis(
    knots: &KnotVector,
    family: &KnotFunctionFamily,
    degree: usize,
) -> Result<LocalBasis> {
    build_basis_opts(knots, family, degree, BuildOptions::default())
}

/// Builds the degree-`degree` basis: integral table -> degree-1 coefficients
/// -> knot-function normalization -> one integrate/difference/connect pass
/// per degree -> change of basis back to the raw family functions.
pub fn build_basis_opts(
    knots: &KnotVector,
    family: &KnotFunctionFamily,
    degree: usize,
    opts: BuildOptions,
) -> Result<LocalBasis> {
    knots.check_degree(degree)?;
    let tol = opts.tol;
    let m = knots.len();
    let tlens = knots.interval_lengths();

    let raw_ints = family.integral_table(knots, degree, tol)?;
    let (ints, scal) = scale_knot_funcs(&raw_ints, &tlens, tol)?;

    let (mut polys, mut genfunc) = make_degree_one(m - 2);
    let mut ladder: Option<Box<LadderLevel>> = None;

    for d in 2..=degree {
        let mut pints: Polys = polys
            .iter()
            .map(|row| row.iter().map(LocalPoly::integral).collect())
            .collect();
        let wints = wrap_windows(ints.order(d - 1), d)?;
        let tvals = wrap_windows(&tlens, d)?;

        let (deltas, consts) = integrate_supports(&tvals, &pints, &genfunc, &wints);

        if opts.retain_ladder {
            let lower = LocalBasis {
                degree: d - 1,
                knots: knots.clone(),
                family: family.clone(),
                polys: polys.clone(),
                genfunc: to_raw_coefs(&genfunc, &scal, d)?,
                scal: scal.clone(),
                ladder: ladder.take(),
                tol,
            };
            ladder = Some(Box::new(LadderLevel {
                lower,
                lower_deltas: deltas.clone(),
            }));
        }

        offset_constants(&mut pints, &consts);

        // Support emptiness of the degree-(d-1) functions; equivalent to
        // delta != 0 for a Chebyshev-space family.
        let pos: Vec<bool> = (0..m - d).map(|i| knots[i + d] - knots[i] > tol).collect();
        for i in 0..pints.len() {
            if pos[i] {
                debug_assert!(
                    deltas[i] > 0.0,
                    "nonempty support must integrate to a positive value (i = {i})"
                );
                let inv = 1.0 / deltas[i];
                for p in &mut pints[i] {
                    p.scale(inv);
                }
                for g in &mut genfunc[i] {
                    g[0] *= inv;
                    g[1] *= inv;
                }
            }
        }

        let (npolys, ngenfunc) = offset_differences(&pints, &genfunc, d);
        polys = npolys;
        genfunc = ngenfunc;

        add_ones(&mut polys, &pos);

        let tvals_next = wrap_windows(&tlens, d + 1)?;
        connect_boundaries(&mut polys, &genfunc, &wints, &tvals_next);
    }

    genfunc = to_raw_coefs(&genfunc, &scal, degree + 1)?;

    Ok(LocalBasis {
        degree,
        knots: knots.clone(),
        family: family.clone(),
        polys,
        genfunc,
        scal,
        ladder,
        tol,
    })
}

/// Degree-1 coefficients: no polynomial part, and per function the pattern
/// `(a, b) = (0, 1)` on the first support interval (the normalized `v`
/// rises 0 -> 1) and `(1, 0)` on the second (`u` falls 1 -> 0).
pub(crate) fn make_degree_one(n: usize) -> (Polys, GenCoefs) {
    debug_assert!(n >= 1);
    let polys = vec![vec![LocalPoly::zero(); 2]; n];
    let genfunc = vec![vec![[0.0, 1.0], [1.0, 0.0]]; n];
    (polys, genfunc)
}

/// Right-multiplies the endpoint values of every order on each nonempty
/// interval by `B_j = A_j^{-1}`, where `A_j` holds the raw order-0 endpoint
/// values. Afterwards the order-0 values satisfy the knot-function endpoint
/// constraints. Empty intervals get zero matrices and zeroed values.
pub(crate) fn scale_knot_funcs(
    ints: &IntegralTable,
    tlens: &[f64],
    tol: f64,
) -> Result<(IntegralTable, Vec<Mat2>)> {
    let orders = ints.order_count();
    let intervals = ints.interval_count();
    debug_assert_eq!(intervals, tlens.len());

    let mut scal = vec![Mat2::ZERO; intervals];
    let mut scaled = vec![vec![[[0.0; 2]; 2]; intervals]; orders];
    for j in 0..intervals {
        if tlens[j] <= tol {
            continue;
        }
        let endpoint_matrix = Mat2(ints.values(0, j));
        let b = endpoint_matrix
            .inverse(tol)
            .map_err(|_| Error::SingularOrIllConditioned { interval: Some(j) })?;
        scal[j] = b;
        for k in 0..orders {
            scaled[k][j] = Mat2(ints.values(k, j)).mul(&b).0;
        }
    }
    Ok((IntegralTable::from_orders(scaled), scal))
}

/// Left-multiplies each `(a, b)` pair by the scaling matrix of its interval,
/// re-expressing the coefficients in terms of the raw family functions.
pub(crate) fn scale_genfunc_coefs(scal_windows: &[Vec<Mat2>], genfunc: &mut GenCoefs) {
    debug_assert_eq!(scal_windows.len(), genfunc.len());
    for (row, windows) in genfunc.iter_mut().zip(scal_windows) {
        for (pair, b) in row.iter_mut().zip(windows) {
            *pair = b.mul_vec(*pair);
        }
    }
}

fn to_raw_coefs(genfunc: &GenCoefs, scal: &[Mat2], width: usize) -> Result<GenCoefs> {
    let windows = wrap_windows(scal, width)?;
    let mut out = genfunc.clone();
    scale_genfunc_coefs(&windows, &mut out);
    Ok(out)
}

/// Definite integrals of the general-function part over each support slot,
/// plus the left-endpoint correction constants
/// `consts = -(a * U(left) + b * V(left))`. With zero-anchored integrals the
/// constants vanish; they are kept for tables with other conventions.
pub(crate) fn genfunc_int(
    genfunc: &GenCoefs,
    wints: &[Vec<EndpointVals>],
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut vals = Vec::with_capacity(genfunc.len());
    let mut consts = Vec::with_capacity(genfunc.len());
    for (grow, wrow) in genfunc.iter().zip(wints) {
        let mut vrow = Vec::with_capacity(grow.len());
        let mut crow = Vec::with_capacity(grow.len());
        for (&[a, b], w) in grow.iter().zip(wrow) {
            let c = -(a * w[0][0] + b * w[0][1]);
            crow.push(c);
            vrow.push(a * w[1][0] + b * w[1][1] + c);
        }
        vals.push(vrow);
        consts.push(crow);
    }
    (vals, consts)
}

/// `deltas[i]`: the definite integral of basis function `i` over its whole
/// support (polynomial antiderivatives evaluated at the interval ends plus
/// the general-function integrals).
pub(crate) fn integrate_supports(
    tvals: &[Vec<f64>],
    pints: &Polys,
    genfunc: &GenCoefs,
    wints: &[Vec<EndpointVals>],
) -> (Vec<f64>, Vec<Vec<f64>>) {
    let (mut vals, consts) = genfunc_int(genfunc, wints);
    let mut deltas = Vec::with_capacity(pints.len());
    for i in 0..pints.len() {
        for slot in 0..pints[i].len() {
            vals[i][slot] += pints[i][slot].eval(tvals[i][slot]);
        }
        deltas.push(vals[i].iter().sum());
    }
    (deltas, consts)
}

/// Adds the general-function constants into the constant coefficient of the
/// corresponding polynomial antiderivatives.
pub(crate) fn offset_constants(pints: &mut Polys, consts: &[Vec<f64>]) {
    for (prow, crow) in pints.iter_mut().zip(consts) {
        for (p, &c) in prow.iter_mut().zip(crow) {
            p.offset_constant(c);
        }
    }
}

/// Differences between the scaled integral terms of neighboring basis
/// functions: new function `i` gets `+pints[i]` on slots `0..d` and
/// `-pints[i+1]` on slots `1..=d` (same pattern for the coefficients). The
/// output has one fewer function and one more interval slot.
pub(crate) fn offset_differences(
    pints: &Polys,
    genfunc: &GenCoefs,
    _new_degree: usize,
) -> (Polys, GenCoefs) {
    let n = pints.len();
    let slots = pints[0].len();
    let mut npolys: Polys = vec![vec![LocalPoly::zero(); slots + 1]; n - 1];
    let mut ngenfunc: GenCoefs = vec![vec![[0.0; 2]; slots + 1]; n - 1];
    for i in 0..n - 1 {
        for slot in 0..slots {
            npolys[i][slot].add_scaled(&pints[i][slot], 1.0);
            npolys[i][slot + 1].add_scaled(&pints[i + 1][slot], -1.0);
            ngenfunc[i][slot][0] += genfunc[i][slot][0];
            ngenfunc[i][slot][1] += genfunc[i][slot][1];
            ngenfunc[i][slot + 1][0] -= genfunc[i + 1][slot][0];
            ngenfunc[i][slot + 1][1] -= genfunc[i + 1][slot][1];
        }
    }
    (npolys, ngenfunc)
}

/// Adds the step contribution of identically-zero lower-degree functions:
/// where `delta_i = 0`, the running integral jumps to 1 past the (empty)
/// support, which lands on the last interval slot of new function `i`.
pub(crate) fn add_ones(polys: &mut Polys, pos: &[bool]) {
    debug_assert_eq!(polys.len() + 1, pos.len());
    for (row, &positive) in polys.iter_mut().zip(pos) {
        if !positive {
            row.last_mut()
                .expect("basis functions have at least two slots")
                .offset_constant(1.0);
        }
    }
}

/// Makes each function continuous across its interior support boundaries:
/// the value at the right end of every non-final slot is added to the
/// constant term of the next slot. Because slots are processed left to
/// right, each evaluated value already includes the accumulated constants,
/// i.e. it is the running value `N_i(t_j)`.
pub(crate) fn connect_boundaries(
    polys: &mut Polys,
    genfunc: &GenCoefs,
    wints: &[Vec<EndpointVals>],
    tvals: &[Vec<f64>],
) {
    for i in 0..polys.len() {
        let slots = polys[i].len();
        debug_assert_eq!(wints[i].len() + 1, slots);
        for slot in 0..slots - 1 {
            let [a, b] = genfunc[i][slot];
            let w = wints[i][slot];
            let end_value = polys[i][slot].eval(tvals[i][slot]) + a * w[1][0] + b * w[1][1];
            polys[i][slot + 1].offset_constant(end_value);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn kv(values: &[f64]) -> KnotVector {
        KnotVector::new(values.to_vec()).unwrap()
    }

    fn scaled_table(
        family: &KnotFunctionFamily,
        knots: &KnotVector,
        degree: usize,
    ) -> (IntegralTable, Vec<Mat2>) {
        let raw = family.integral_table(knots, degree, DEFAULT_TOL).unwrap();
        scale_knot_funcs(&raw, &knots.interval_lengths(), DEFAULT_TOL).unwrap()
    }

    #[test]
    fn degree_one_pattern() {
        let (polys, genfunc) = make_degree_one(1);
        assert_eq!(polys, vec![vec![LocalPoly::zero(), LocalPoly::zero()]]);
        assert_eq!(genfunc, vec![vec![[0.0, 1.0], [1.0, 0.0]]]);

        let (_, genfunc2) = make_degree_one(2);
        assert_eq!(genfunc2[0], genfunc2[1]);
    }

    #[test]
    fn scaling_is_identity_for_already_normalized_pair() {
        // (cos s, sin s) on an interval of length pi/2 already satisfies the
        // endpoint constraints (up to the rounding of cos(pi/2)).
        let knots = kv(&[0.0, PI / 2.0, PI]);
        let family = KnotFunctionFamily::trig(1.0);
        let raw = family.integral_table(&knots, 1, DEFAULT_TOL).unwrap();
        let (scaled, scal) = scaled_table(&family, &knots, 1);
        for r in 0..2 {
            for c in 0..2 {
                assert!((scal[0].0[r][c] - Mat2::IDENTITY.0[r][c]).abs() < 1e-15);
                assert!((scaled.values(0, 0)[r][c] - raw.values(0, 0)[r][c]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn scaling_normalizes_linear_pair() {
        let knots = kv(&[0.0, 2.0, 4.0]);
        let (scaled, scal) = scaled_table(&KnotFunctionFamily::linear(), &knots, 2);
        assert_eq!(scal[0], Mat2([[1.0, 0.0], [-0.5, 0.5]]));
        // Order-0 endpoints now satisfy u: 1 -> 0, v: 0 -> 1.
        assert_eq!(scaled.values(0, 0), [[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn scaling_skips_empty_intervals() {
        let knots = kv(&[0.0, 0.0, 1.0, 2.0]);
        let (scaled, scal) = scaled_table(&KnotFunctionFamily::linear(), &knots, 1);
        assert_eq!(scal[0], Mat2::ZERO);
        assert_eq!(scaled.values(0, 0), [[0.0; 2]; 2]);
        assert_ne!(scal[1], Mat2::ZERO);
    }

    #[test]
    fn hat_support_integrals() {
        // Uniform hat on [0, 1, 2] integrates to 1; on [0, 1, 3] to 1.5.
        for (knots, expect) in [(kv(&[0.0, 1.0, 2.0]), 1.0), (kv(&[0.0, 1.0, 3.0]), 1.5)] {
            let family = KnotFunctionFamily::linear();
            let (ints, _) = scaled_table(&family, &knots, 2);
            let tlens = knots.interval_lengths();
            let (polys, genfunc) = make_degree_one(knots.len() - 2);
            let pints: Polys = polys
                .iter()
                .map(|row| row.iter().map(LocalPoly::integral).collect())
                .collect();
            let wints = wrap_windows(ints.order(1), 2).unwrap();
            let tvals = wrap_windows(&tlens, 2).unwrap();
            let (deltas, consts) = integrate_supports(&tvals, &pints, &genfunc, &wints);
            assert!((deltas[0] - expect).abs() < 1e-14, "{deltas:?}");
            // Anchored integrals make every left-endpoint constant zero.
            assert!(consts.iter().flatten().all(|&c| c == 0.0));
        }
    }

    #[test]
    fn empty_support_has_zero_delta() {
        let knots = kv(&[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let family = KnotFunctionFamily::linear();
        let (ints, _) = scaled_table(&family, &knots, 2);
        let tlens = knots.interval_lengths();
        let (polys, genfunc) = make_degree_one(4);
        let pints: Polys = polys
            .iter()
            .map(|row| row.iter().map(LocalPoly::integral).collect())
            .collect();
        let wints = wrap_windows(ints.order(1), 2).unwrap();
        let tvals = wrap_windows(&tlens, 2).unwrap();
        let (deltas, _) = integrate_supports(&tvals, &pints, &genfunc, &wints);
        assert_eq!(deltas[0], 0.0);
        assert!((deltas[1] - 0.5).abs() < 1e-14);
        assert!((deltas[2] - 0.5).abs() < 1e-14);
        assert_eq!(deltas[3], 0.0);
    }

    #[test]
    fn differences_shrink_functions_and_extend_slots() {
        let pints: Polys = vec![
            vec![LocalPoly::new(vec![1.0]), LocalPoly::new(vec![2.0])],
            vec![LocalPoly::new(vec![1.0]), LocalPoly::new(vec![2.0])],
        ];
        let genfunc: GenCoefs = vec![
            vec![[1.0, 2.0], [3.0, 4.0]],
            vec![[1.0, 2.0], [3.0, 4.0]],
        ];
        let (npolys, ngen) = offset_differences(&pints, &genfunc, 2);
        assert_eq!(npolys.len(), 1);
        assert_eq!(npolys[0].len(), 3);
        // Identical inputs cancel on the overlapping interior slot.
        assert_eq!(npolys[0][1].eval(0.5), 2.0 - 1.0);
        assert_eq!(ngen[0][1], [3.0 - 1.0, 4.0 - 2.0]);
        assert_eq!(ngen[0][0], [1.0, 2.0]);
        assert_eq!(ngen[0][2], [-3.0, -4.0]);
    }

    #[test]
    fn add_ones_touches_only_degenerate_rows() {
        let mut polys: Polys = vec![
            vec![LocalPoly::zero(); 3],
            vec![LocalPoly::new(vec![0.5]); 3],
        ];
        add_ones(&mut polys, &[true, false, true]);
        assert_eq!(polys[0][2], LocalPoly::zero());
        assert_eq!(polys[1][2].coeffs(), &[1.5]);
        assert_eq!(polys[1][0].coeffs(), &[0.5]);
    }

    #[test]
    fn uniform_quadratic_bspline_coefficients() {
        // Full pipeline for p = 2, T = [0, 1, 2, 3], linear family. The
        // single basis function is t^2/2, then -t^2 + 3t - 3/2, then
        // (3 - t)^2 / 2; in local coordinates with the raw pair (1, s):
        let knots = kv(&[0.0, 1.0, 2.0, 3.0]);
        let basis = build_basis(&knots, &KnotFunctionFamily::linear(), 2).unwrap();
        assert_eq!(basis.basis_count(), 1);

        assert_eq!(basis.poly(0, 0).coeffs(), &[0.0]);
        assert_eq!(basis.poly(0, 1).coeffs(), &[0.5]);
        assert_eq!(basis.poly(0, 2).coeffs(), &[0.5]);

        assert_eq!(basis.gen_coefs(0, 0), [0.0, 1.0]);
        assert_eq!(basis.gen_coefs(0, 1), [1.0, -2.0]);
        assert_eq!(basis.gen_coefs(0, 2), [-1.0, 1.0]);
    }

    #[test]
    fn open_quadratic_bernstein_reduction() {
        // T = [0,0,0,1,1,1] makes the quadratic Bernstein polynomials on
        // [0, 1]: (1-s)^2, 2s(1-s), s^2, all carried by interval 2.
        let knots = kv(&[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let basis = build_basis(&knots, &KnotFunctionFamily::linear(), 2).unwrap();
        assert_eq!(basis.basis_count(), 3);

        assert_eq!(basis.poly(0, 2).coeffs(), &[1.0]);
        assert_eq!(basis.gen_coefs(0, 2), [-2.0, 2.0]);
        assert_eq!(basis.gen_coefs(1, 1), [2.0, -4.0]);
        assert_eq!(basis.gen_coefs(2, 0), [0.0, 2.0]);
        // Slots over empty intervals never carry general-function terms.
        assert_eq!(basis.gen_coefs(1, 0), [0.0, 0.0]);
        assert_eq!(basis.gen_coefs(2, 2), [0.0, 0.0]);
    }

    #[test]
    fn rejects_undersized_knot_vectors() {
        let knots = kv(&[0.0, 1.0, 2.0]);
        assert!(matches!(
            build_basis(&knots, &KnotFunctionFamily::linear(), 2),
            Err(Error::DegreeTooLargeForKnots { .. })
        ));
        assert!(build_basis(&knots, &KnotFunctionFamily::linear(), 0).is_err());
    }

    #[test]
    fn ladder_is_retained_on_request() {
        let knots = kv(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        let opts = BuildOptions {
            retain_ladder: true,
            ..BuildOptions::default()
        };
        let basis =
            build_basis_opts(&knots, &KnotFunctionFamily::linear(), 3, opts).unwrap();
        let (lower, deltas) = basis.lower_level().expect("ladder retained");
        assert_eq!(lower.degree(), 2);
        assert_eq!(deltas.len(), knots.len() - 3);
        // Uniform quadratic B-splines integrate to 1 over their support.
        for &d in deltas {
            assert!((d - 1.0).abs() < 1e-12);
        }
        let (bottom, _) = lower.lower_level().expect("chain to degree 1");
        assert_eq!(bottom.degree(), 1);
        assert!(bottom.lower_level().is_none());

        let plain = build_basis(&knots, &KnotFunctionFamily::linear(), 3).unwrap();
        assert!(!plain.has_ladder());
    }

    #[test]
    fn dump_round_trips_through_json() {
        let knots = kv(&[0.0, 0.0, 1.0, 2.0, 3.0, 3.0]);
        let basis = build_basis(&knots, &KnotFunctionFamily::trig(1.2), 2).unwrap();
        let json = serde_json::to_string(&basis).unwrap();
        let back: LocalBasis = serde_json::from_str(&json).unwrap();
        assert_eq!(back.degree(), basis.degree());
        assert_eq!(back.polys, basis.polys);
        assert_eq!(back.genfunc, basis.genfunc);
        assert_eq!(back.scal, basis.scal);
    }

    #[test]
    fn deserialization_validates_shapes() {
        let bad = r#"{
            "degree": 2,
            "knots": [0.0, 1.0, 2.0, 3.0],
            "family": {"kind": "linear"},
            "polys": [[[0.0], [0.5]]],
            "genfunc": [[[0.0, 1.0], [1.0, -2.0], [-1.0, 1.0]]],
            "scal": [[[1.0, 0.0], [0.0, 1.0]]]
        }"#;
        assert!(serde_json::from_str::<LocalBasis>(bad).is_err());
    }
}
