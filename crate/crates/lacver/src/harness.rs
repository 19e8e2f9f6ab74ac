//! Verification harness: LHS-vs-RHS comparisons for single points and
//! parameter grids, plus the fixed cross-identity consistency suite.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::identities::{
    closed_form_eq12, closed_form_eq8, lhs_terms, rhs_terms, validate, validity_domain, EvalParams,
    IdentityError, IdentityId, ParamName,
};
use crate::series::{sum_adaptive, KahanSum, SeriesError, SeriesResult, TruncationPolicy};
use crate::specfun::{factorial, laguerre};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        })
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Params(#[from] IdentityError),
    #[error("{side} series failed: {source}")]
    Numeric { side: Side, source: SeriesError },
    #[error("grid is missing {param} values required by {id}")]
    MissingGridParam { id: IdentityId, param: ParamName },
    #[error("grid has an empty {axis} axis")]
    EmptyGridAxis { axis: &'static str },
    #[error("tolerance must be positive and finite (got {tol})")]
    InvalidTolerance { tol: f64 },
    #[error("truncation policy violates its invariants")]
    InvalidPolicy,
}

/// One LHS-vs-RHS comparison.
///
/// Invariants: `abs_err = |lhs.value - rhs.value|`,
/// `rel_err = abs_err / max(1, |rhs.value|)` (the closed/structured side is
/// the reference), and `pass` iff `rel_err <= tol` and both sides converged.
/// A point that fails to converge is reported as a failure, never excluded.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub id: IdentityId,
    pub params: EvalParams,
    pub lhs: SeriesResult,
    pub rhs: SeriesResult,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

fn make_record(
    id: IdentityId,
    params: EvalParams,
    lhs: SeriesResult,
    rhs: SeriesResult,
    tol: f64,
) -> VerificationRecord {
    let abs_err = (lhs.value - rhs.value).abs();
    let rel_err = abs_err / rhs.value.abs().max(1.0);
    VerificationRecord {
        id,
        params,
        lhs,
        rhs,
        abs_err,
        rel_err,
        tol,
        pass: rel_err <= tol && lhs.converged && rhs.converged,
    }
}

fn exact_result(value: f64) -> SeriesResult {
    SeriesResult {
        value,
        terms_used: 1,
        last_term_mag: 0.0,
        converged: true,
    }
}

fn check_inputs(tol: f64, policy: &TruncationPolicy) -> Result<(), HarnessError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(HarnessError::InvalidTolerance { tol });
    }
    if !policy.is_valid() {
        return Err(HarnessError::InvalidPolicy);
    }
    Ok(())
}

/// Evaluates both sides of `id` at `p` and compares them against `tol`.
pub fn verify(
    id: IdentityId,
    p: &EvalParams,
    tol: f64,
    policy: &TruncationPolicy,
) -> Result<VerificationRecord, HarnessError> {
    check_inputs(tol, policy)?;
    validate(id, p)?;
    let lhs = sum_adaptive(lhs_terms(id, p)?, policy).map_err(|source| HarnessError::Numeric {
        side: Side::Lhs,
        source,
    })?;
    let rhs = sum_adaptive(rhs_terms(id, p)?, policy).map_err(|source| HarnessError::Numeric {
        side: Side::Rhs,
        source,
    })?;
    Ok(make_record(id, *p, lhs, rhs, tol))
}

/// Cartesian parameter grid; axes the target identities do not take may be
/// omitted.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ParamGrid {
    pub x_values: Vec<f64>,
    pub t_values: Vec<f64>,
    pub alpha_values: Option<Vec<f64>>,
    pub k_values: Option<Vec<u32>>,
    pub m_values: Option<Vec<u32>>,
}

/// Which identities a sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepTarget {
    All,
    One(IdentityId),
}

impl SweepTarget {
    pub fn ids(self) -> Vec<IdentityId> {
        match self {
            SweepTarget::All => IdentityId::ALL.to_vec(),
            SweepTarget::One(id) => vec![id],
        }
    }
}

impl std::str::FromStr for SweepTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(SweepTarget::All)
        } else {
            s.parse::<IdentityId>().map(SweepTarget::One)
        }
    }
}

/// A point whose evaluation aborted (non-finite terms upstream).
#[derive(Clone, Debug, Serialize)]
pub struct PointError {
    pub id: IdentityId,
    pub params: EvalParams,
    pub message: String,
}

/// Result of a sweep: records in deterministic lexicographic parameter
/// order (identity, then x, t, alpha, k, m in the order supplied), plus
/// any per-point evaluation errors.
#[derive(Debug, Default)]
pub struct SweepReport {
    pub records: Vec<VerificationRecord>,
    pub errors: Vec<PointError>,
}

impl SweepReport {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.records.len() - self.passed()
    }

    pub fn errored(&self) -> usize {
        self.errors.len()
    }
}

fn grid_points(id: IdentityId, grid: &ParamGrid) -> Result<Vec<EvalParams>, HarnessError> {
    if grid.x_values.is_empty() {
        return Err(HarnessError::EmptyGridAxis { axis: "x" });
    }
    if grid.t_values.is_empty() {
        return Err(HarnessError::EmptyGridAxis { axis: "t" });
    }
    let desc = id.descriptor();
    let axis_f =
        |name: ParamName, values: &Option<Vec<f64>>| -> Result<Vec<Option<f64>>, HarnessError> {
            if desc.required_params.contains(&name) {
                match values {
                    Some(v) if !v.is_empty() => Ok(v.iter().map(|&a| Some(a)).collect()),
                    _ => Err(HarnessError::MissingGridParam { id, param: name }),
                }
            } else {
                Ok(vec![None])
            }
        };
    let axis_u =
        |name: ParamName, values: &Option<Vec<u32>>| -> Result<Vec<Option<u32>>, HarnessError> {
            if desc.required_params.contains(&name) {
                match values {
                    Some(v) if !v.is_empty() => Ok(v.iter().map(|&a| Some(a)).collect()),
                    _ => Err(HarnessError::MissingGridParam { id, param: name }),
                }
            } else {
                Ok(vec![None])
            }
        };
    let alphas = axis_f(ParamName::Alpha, &grid.alpha_values)?;
    let ks = axis_u(ParamName::K, &grid.k_values)?;
    let ms = axis_u(ParamName::M, &grid.m_values)?;

    let mut points = Vec::new();
    for &x in &grid.x_values {
        for &t in &grid.t_values {
            for &alpha in &alphas {
                for &k in &ks {
                    for &m in &ms {
                        points.push(EvalParams { x, t, alpha, k, m });
                    }
                }
            }
        }
    }
    Ok(points)
}

/// Cartesian-product verification over `grid`. Points outside an
/// identity's validity domain are skipped; per-point numeric failures are
/// collected, not fatal. A grid that lacks a required axis is an error.
pub fn sweep(
    target: SweepTarget,
    grid: &ParamGrid,
    tol: f64,
    policy: &TruncationPolicy,
) -> Result<SweepReport, HarnessError> {
    check_inputs(tol, policy)?;
    // validate every target's axes up front so one bad id aborts cleanly
    let per_id: Vec<(IdentityId, Vec<EvalParams>)> = target
        .ids()
        .into_iter()
        .map(|id| grid_points(id, grid).map(|pts| (id, pts)))
        .collect::<Result<_, _>>()?;

    let mut report = SweepReport::default();
    for (id, points) in per_id {
        for p in points {
            if !validity_domain(id, &p) {
                continue;
            }
            match verify(id, &p, tol, policy) {
                Ok(rec) => report.records.push(rec),
                Err(e) => report.errors.push(PointError {
                    id,
                    params: p,
                    message: e.to_string(),
                }),
            }
        }
    }
    Ok(report)
}

/// Generalized binomial coefficient `C(alpha, i)` for real `alpha`, as a
/// falling-factorial product.
fn real_binomial(alpha: f64, i: u32) -> f64 {
    let mut p = 1.0;
    for l in 0..i {
        p *= alpha - l as f64;
    }
    p / factorial(i)
}

/// Coefficient of `t^n` in the Taylor expansion of the eq12 closed form.
///
/// Rewriting the closed form as
/// `(1/2) [ e^{-x s} (1+s)^alpha + e^{x s} (1-s)^alpha ]` with `s = sqrt(t)`
/// makes it even in `s`, and the `s^{2n}` coefficient of either branch is
/// `sum_{j=0}^{2n} (-x)^j / j! * C(alpha, 2n-j)`. This is a finite sum,
/// independent of both the Laguerre recurrence and the cosh/asinh
/// evaluation path, so it anchors the branch-choice check.
pub fn eq12_taylor_coeff(n: u32, alpha: f64, x: f64) -> f64 {
    let mut acc = KahanSum::new();
    let mut pow = 1.0; // (-x)^j / j!
    for j in 0..=2 * n {
        acc.add(pow * real_binomial(alpha, 2 * n - j));
        pow *= -x / (j as f64 + 1.0);
    }
    acc.value()
}

const CROSS_CHECK_POINTS: [(f64, f64); 10] = [
    (0.3, 0.05),
    (0.5, 0.1),
    (1.0, 0.15),
    (1.5, 0.25),
    (2.0, 0.3),
    (2.5, 0.35),
    (3.0, 0.4),
    (0.25, 0.2),
    (4.0, 0.45),
    (0.75, 0.6),
];

/// The fixed consistency suite:
///
/// (a) eq4 with `k = 0` against eq1, termwise and summed (tol 1e-12);
/// (b) the summed right side of eq7 at `alpha = 0` against the eq8 closed
///     form at `m = 0` (tol 1e-9);
/// (c) the eq12 closed form at `alpha = 0` against `cosh(sqrt(t) x)`
///     (tol 1e-12);
/// (d) Taylor coefficients of the eq12 closed form through order `t^3`
///     against direct `L_{2n}^{(alpha-2n)}(x)` evaluations (tol 1e-8).
pub fn cross_checks(policy: &TruncationPolicy) -> Result<Vec<VerificationRecord>, HarnessError> {
    if !policy.is_valid() {
        return Err(HarnessError::InvalidPolicy);
    }
    let mut records = Vec::new();

    // (a) eq4|k=0 vs eq1
    for &(x, t) in &CROSS_CHECK_POINTS {
        let p_eq4 = EvalParams::new(x, t).with_k(0);
        let p_eq1 = EvalParams::new(x, t);
        let lhs = sum_adaptive(rhs_terms(IdentityId::Eq4, &p_eq4)?, policy).map_err(|source| {
            HarnessError::Numeric {
                side: Side::Lhs,
                source,
            }
        })?;
        let rhs = sum_adaptive(rhs_terms(IdentityId::Eq1, &p_eq1)?, policy).map_err(|source| {
            HarnessError::Numeric {
                side: Side::Rhs,
                source,
            }
        })?;
        let mut rec = make_record(IdentityId::Eq4, p_eq4, lhs, rhs, 1e-12);
        // termwise: the two series are algebraically identical
        let terms_a: Vec<f64> = rhs_terms(IdentityId::Eq4, &p_eq4)?.take(40).collect();
        let terms_b: Vec<f64> = rhs_terms(IdentityId::Eq1, &p_eq1)?.take(40).collect();
        let termwise_ok = terms_a
            .iter()
            .zip(&terms_b)
            .all(|(&a, &b)| (a - b).abs() <= 1e-12 * b.abs().max(1.0));
        rec.pass &= termwise_ok;
        records.push(rec);
    }

    // (b) eq7|alpha=0 summed RHS vs closed_form_eq8|m=0
    for &(x, t) in &CROSS_CHECK_POINTS {
        let p7 = EvalParams::new(x, t).with_alpha(0.0);
        let p8 = EvalParams::new(x, t).with_m(0);
        let lhs = sum_adaptive(rhs_terms(IdentityId::Eq7, &p7)?, policy).map_err(|source| {
            HarnessError::Numeric {
                side: Side::Lhs,
                source,
            }
        })?;
        let rhs = exact_result(closed_form_eq8(&p8)?);
        records.push(make_record(IdentityId::Eq7, p7, lhs, rhs, 1e-9));
    }

    // (c) closed_form_eq12|alpha=0 vs cosh(sqrt(t) x)
    for &(x, t) in &CROSS_CHECK_POINTS {
        let p = EvalParams::new(x, t).with_alpha(0.0);
        let lhs = exact_result(closed_form_eq12(&p)?);
        let rhs = exact_result((t.sqrt() * x).cosh());
        records.push(make_record(IdentityId::Eq12, p, lhs, rhs, 1e-12));
    }

    // (d) eq12 Taylor coefficients through t^3
    for &alpha in &[0.0, 1.0, 2.5] {
        for &x in &[0.5, 1.0, 3.0] {
            let mut worst: Option<(f64, f64, f64)> = None; // (rel, coeff, direct)
            for n in 0..=3u32 {
                let coeff = eq12_taylor_coeff(n, alpha, x);
                let direct = laguerre(2 * n, alpha - 2.0 * n as f64, x);
                let rel = (coeff - direct).abs() / direct.abs().max(1.0);
                if worst.map_or(true, |(w, _, _)| rel > w) {
                    worst = Some((rel, coeff, direct));
                }
            }
            let (_, coeff, direct) = worst.unwrap();
            let p = EvalParams::new(x, 0.0).with_alpha(alpha);
            records.push(make_record(
                IdentityId::Eq12,
                p,
                exact_result(coeff),
                exact_result(direct),
                1e-8,
            ));
        }
    }

    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_passes_simple_points() {
        let policy = TruncationPolicy::default();
        let r = verify(IdentityId::Eq1, &EvalParams::new(1.0, 0.3), 1e-9, &policy).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.lhs.converged && r.rhs.converged);

        let r = verify(IdentityId::Eq10, &EvalParams::new(2.0, 0.5), 1e-9, &policy).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn verify_rejects_out_of_domain() {
        let policy = TruncationPolicy::default();
        let err = verify(
            IdentityId::Eq8,
            &EvalParams::new(1.0, 1.2).with_m(1),
            1e-9,
            &policy,
        )
        .unwrap_err();
        assert!(matches!(err, HarnessError::Params(_)), "{err}");
    }

    #[test]
    fn non_convergence_is_reported_not_hidden() {
        // OGF near its singularity with a tight cap
        let policy = TruncationPolicy {
            max_terms: 50,
            ..TruncationPolicy::default()
        };
        let r = verify(
            IdentityId::Eq10,
            &EvalParams::new(2.0, 0.999),
            1e-9,
            &policy,
        )
        .unwrap();
        assert!(!r.pass);
        assert!(!r.lhs.converged || !r.rhs.converged);
    }

    #[test]
    fn sweep_basic_and_determinism() {
        let policy = TruncationPolicy::default();
        let grid = ParamGrid {
            x_values: vec![1.0],
            t_values: vec![0.0, 0.1],
            ..ParamGrid::default()
        };
        let a = sweep(SweepTarget::One(IdentityId::Eq1), &grid, 1e-9, &policy).unwrap();
        assert_eq!(a.records.len(), 2);
        assert_eq!(a.passed(), 2);
        let b = sweep(SweepTarget::One(IdentityId::Eq1), &grid, 1e-9, &policy).unwrap();
        for (ra, rb) in a.records.iter().zip(&b.records) {
            assert_eq!(ra.lhs.value.to_bits(), rb.lhs.value.to_bits());
            assert_eq!(ra.rhs.value.to_bits(), rb.rhs.value.to_bits());
        }
    }

    #[test]
    fn sweep_missing_axis_is_an_error() {
        let policy = TruncationPolicy::default();
        let grid = ParamGrid {
            x_values: vec![1.0],
            t_values: vec![0.1],
            ..ParamGrid::default()
        };
        let err = sweep(SweepTarget::One(IdentityId::Eq8), &grid, 1e-9, &policy).unwrap_err();
        assert!(matches!(
            err,
            HarnessError::MissingGridParam {
                id: IdentityId::Eq8,
                param: ParamName::M
            }
        ));
    }

    #[test]
    fn sweep_single_trivial_point() {
        let policy = TruncationPolicy::default();
        let grid = ParamGrid {
            x_values: vec![0.0],
            t_values: vec![0.0],
            alpha_values: Some(vec![0.0]),
            ..ParamGrid::default()
        };
        let rep = sweep(SweepTarget::One(IdentityId::Eq12), &grid, 1e-9, &policy).unwrap();
        assert_eq!(rep.records.len(), 1);
        let rec = &rep.records[0];
        assert!(rec.pass);
        assert_eq!(rec.lhs.value, 1.0);
        assert_eq!(rec.rhs.value, 1.0);
    }

    #[test]
    fn cross_check_suite_passes() {
        let records = cross_checks(&TruncationPolicy::default()).unwrap();
        assert_eq!(records.len(), 10 + 10 + 10 + 9);
        for rec in &records {
            assert!(
                rec.pass,
                "cross check failed: {} at {:?}, rel_err {}",
                rec.id, rec.params, rec.rel_err
            );
        }
    }

    #[test]
    fn taylor_coeff_partial_sums_track_closed_form() {
        // sum of the first coefficients reproduces the closed form at small t
        let (alpha, x, t) = (1.7, 0.9, 1e-3);
        let p = EvalParams::new(x, t).with_alpha(alpha);
        let f = closed_form_eq12(&p).unwrap();
        let approx: f64 = (0..=3)
            .map(|n| eq12_taylor_coeff(n, alpha, x) * t.powi(n as i32))
            .sum();
        assert!(
            (f - approx).abs() <= 1e-11 * f.abs().max(1.0),
            "{f} vs {approx}"
        );
    }

    #[test]
    fn cross_check_d_coefficient_of_t1() {
        // coefficient of t^1 at alpha = 2, x = 1 is L_2^{(0)}(1) = -0.5
        let c = eq12_taylor_coeff(1, 2.0, 1.0);
        assert!((c - (-0.5)).abs() <= 1e-14, "{c}");
    }
}
