//! The twelve lacunary generating-function identities.
//!
//! Each identity is encoded as a pair of independently evaluable term
//! streams: the left side sums over the lacunary Laguerre index `n`, the
//! right side over `r` (with a finite inner `s`-sum folded into each term
//! where the identity has one, and a single closed-form value for eq8 and
//! eq12). Imaginary-argument Hermite factors are realized through the real
//! family `G_r(y) = i^{-r} H_r(i y)`, whose sign prefactors cancel exactly:
//! `(i x sqrt(t))^r H_r(i sqrt(t)) = (-1)^r (x sqrt(t))^r G_r(sqrt(t))`.
//!
//! Right-side term magnitudes are assembled in log space with a separately
//! tracked sign ([`crate::lognum::SignedLog`]); factorial denominators like
//! `(r+6)!` overflow `f64` near `r = 165` while the terms they appear in
//! are tiny.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lognum::SignedLog;
use crate::specfun::{
    bessel_i_ln, hermite_imag_ln, laguerre, laguerre_alpha_minus_n, ln_pochhammer_pos,
    log_factorial, log_gamma,
};

/// One of the twelve identities, `eq1` through `eq12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Eq1,
    Eq2,
    Eq3,
    Eq4,
    Eq5,
    Eq6,
    Eq7,
    Eq8,
    Eq9,
    Eq10,
    Eq11,
    Eq12,
}

impl IdentityId {
    pub const ALL: [IdentityId; 12] = [
        IdentityId::Eq1,
        IdentityId::Eq2,
        IdentityId::Eq3,
        IdentityId::Eq4,
        IdentityId::Eq5,
        IdentityId::Eq6,
        IdentityId::Eq7,
        IdentityId::Eq8,
        IdentityId::Eq9,
        IdentityId::Eq10,
        IdentityId::Eq11,
        IdentityId::Eq12,
    ];

    pub fn equation(self) -> u32 {
        self as u32 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Eq1 => "eq1",
            IdentityId::Eq2 => "eq2",
            IdentityId::Eq3 => "eq3",
            IdentityId::Eq4 => "eq4",
            IdentityId::Eq5 => "eq5",
            IdentityId::Eq6 => "eq6",
            IdentityId::Eq7 => "eq7",
            IdentityId::Eq8 => "eq8",
            IdentityId::Eq9 => "eq9",
            IdentityId::Eq10 => "eq10",
            IdentityId::Eq11 => "eq11",
            IdentityId::Eq12 => "eq12",
        }
    }

    pub fn descriptor(self) -> IdentityDescriptor {
        use IdentityId::*;
        use ParamName::*;
        let (kind, lacunarity, required): (GfKind, u32, &'static [ParamName]) = match self {
            Eq1 | Eq2 | Eq3 => (GfKind::Exponential, 2, &[]),
            Eq4 => (GfKind::Exponential, 2, &[K]),
            Eq5 => (GfKind::Exponential, 3, &[K]),
            Eq6 => (GfKind::Exponential, 3, &[]),
            Eq7 => (GfKind::Ordinary, 2, &[Alpha]),
            Eq8 => (GfKind::Ordinary, 2, &[M]),
            Eq9 => (GfKind::Ordinary, 3, &[Alpha]),
            Eq10 => (GfKind::Ordinary, 2, &[]),
            Eq11 => (GfKind::Ordinary, 3, &[]),
            Eq12 => (GfKind::Ordinary, 2, &[Alpha]),
        };
        let (t_max, t_max_inclusive) = match kind {
            // both sides are entire in t for the exponential identities;
            // the cap is a configuration choice, not a convergence bound
            GfKind::Exponential => (EGF_T_MAX, true),
            GfKind::Ordinary => (1.0, false),
        };
        IdentityDescriptor {
            id: self,
            equation: self.equation(),
            kind,
            lacunarity,
            required_params: required,
            t_max,
            t_max_inclusive,
        }
    }

    /// eq7-eq11 have alternating-sign right-side arguments that assume
    /// `x >= 0`; the exponential identities and eq12 take any real `x`.
    pub fn requires_nonnegative_x(self) -> bool {
        matches!(
            self,
            IdentityId::Eq7
                | IdentityId::Eq8
                | IdentityId::Eq9
                | IdentityId::Eq10
                | IdentityId::Eq11
        )
    }

    /// eq7 and eq9 keep every Gamma argument positive only for `alpha > -1`.
    pub fn requires_alpha_above_minus_one(self) -> bool {
        matches!(self, IdentityId::Eq7 | IdentityId::Eq9)
    }
}

/// Default `t` cap for the exponential identities.
pub const EGF_T_MAX: f64 = 4.0;

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown identity '{s}' (expected eq1..eq12)"))
    }
}

/// Exponential (`t^n/n!`) vs ordinary (`t^n`, possibly Pochhammer-weighted)
/// generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GfKind {
    Exponential,
    Ordinary,
}

impl fmt::Display for GfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GfKind::Exponential => "EGF",
            GfKind::Ordinary => "OGF",
        })
    }
}

/// Optional parameters an identity may require.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamName {
    Alpha,
    K,
    M,
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamName::Alpha => "alpha",
            ParamName::K => "k",
            ParamName::M => "m",
        })
    }
}

/// Static description of one identity.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdentityDescriptor {
    pub id: IdentityId,
    pub equation: u32,
    pub kind: GfKind,
    pub lacunarity: u32,
    pub required_params: &'static [ParamName],
    pub t_max: f64,
    pub t_max_inclusive: bool,
}

impl IdentityDescriptor {
    pub fn t_domain_string(&self) -> String {
        format!(
            "[0,{}{}",
            self.t_max,
            if self.t_max_inclusive { "]" } else { ")" }
        )
    }
}

/// The point at which an identity is evaluated. Exactly the optional
/// parameters the identity requires must be present.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    pub x: f64,
    pub t: f64,
    pub alpha: Option<f64>,
    pub k: Option<u32>,
    pub m: Option<u32>,
}

impl EvalParams {
    pub fn new(x: f64, t: f64) -> Self {
        EvalParams {
            x,
            t,
            alpha: None,
            k: None,
            m: None,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    fn get(&self, name: ParamName) -> bool {
        match name {
            ParamName::Alpha => self.alpha.is_some(),
            ParamName::K => self.k.is_some(),
            ParamName::M => self.m.is_some(),
        }
    }
}

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("{id} requires parameter --{param}")]
    MissingParam { id: IdentityId, param: ParamName },
    #[error("{id} does not take parameter --{param}")]
    UnexpectedParam { id: IdentityId, param: ParamName },
    #[error("{id}: {detail}")]
    OutOfDomain { id: IdentityId, detail: String },
}

/// Checks that `p` lies in the implemented domain of `id`; returns the
/// first violation. [`validity_domain`] is the boolean view of this.
pub fn validate(id: IdentityId, p: &EvalParams) -> Result<(), IdentityError> {
    let desc = id.descriptor();
    for &name in [ParamName::Alpha, ParamName::K, ParamName::M].iter() {
        let required = desc.required_params.contains(&name);
        let present = p.get(name);
        if required && !present {
            return Err(IdentityError::MissingParam { id, param: name });
        }
        if !required && present {
            return Err(IdentityError::UnexpectedParam { id, param: name });
        }
    }
    if !p.x.is_finite() || !p.t.is_finite() {
        return Err(IdentityError::OutOfDomain {
            id,
            detail: format!("x and t must be finite (got x = {}, t = {})", p.x, p.t),
        });
    }
    let t_ok = p.t >= 0.0
        && if desc.t_max_inclusive {
            p.t <= desc.t_max
        } else {
            p.t < desc.t_max
        };
    if !t_ok {
        return Err(IdentityError::OutOfDomain {
            id,
            detail: format!("t = {} outside {}", p.t, desc.t_domain_string()),
        });
    }
    if id.requires_nonnegative_x() && p.x < 0.0 {
        return Err(IdentityError::OutOfDomain {
            id,
            detail: format!("x = {} but {id} requires x >= 0", p.x),
        });
    }
    if let Some(alpha) = p.alpha {
        if !alpha.is_finite() {
            return Err(IdentityError::OutOfDomain {
                id,
                detail: format!("alpha must be finite (got {alpha})"),
            });
        }
        if id.requires_alpha_above_minus_one() && alpha <= -1.0 {
            return Err(IdentityError::OutOfDomain {
                id,
                detail: format!("alpha = {alpha} but {id} requires alpha > -1"),
            });
        }
    }
    Ok(())
}

/// True iff `p` lies in the implemented domain of `id`.
pub fn validity_domain(id: IdentityId, p: &EvalParams) -> bool {
    validate(id, p).is_ok()
}

/// Coefficient polynomial `p_2(r; x, t)` of eq2.
pub fn p2(r: u32, x: f64, t: f64) -> f64 {
    let rf = r as f64;
    (1.0 + 2.0 * t) * rf * rf
        + (5.0 - 4.0 * x * t + 10.0 * t) * rf
        + (6.0 + 12.0 * t - 12.0 * x * t + 2.0 * t * x * x)
}

/// Coefficient polynomial `p_4(r; x, t)` of eq3, with the coefficient
/// groups kept exactly as printed.
pub fn p4(r: u32, x: f64, t: f64) -> f64 {
    let rf = r as f64;
    let x2 = x * x;
    let x3 = x2 * x;
    let x4 = x2 * x2;
    let t2 = t * t;
    (2.0 + 10.0 * t + 4.0 * t2) * rf.powi(4)
        + (36.0 + (180.0 - 20.0 * x) * t + (72.0 - 16.0 * x) * t2) * rf.powi(3)
        + (238.0 + (1190.0 - 300.0 * x + 10.0 * x2) * t + (476.0 - 240.0 * x + 24.0 * x2) * t2)
            * rf.powi(2)
        + (684.0
            + (3420.0 - 1480.0 * x + 110.0 * x2) * t
            + (1368.0 - 1184.0 * x + 264.0 * x2 - 16.0 * x3) * t2)
            * rf
        + 720.0
        + (3600.0 - 2400.0 * x + 300.0 * x2) * t
        + (1440.0 - 1920.0 * x + 720.0 * x2 - 96.0 * x3 + 4.0 * x4) * t2
}

/// Coefficient polynomial `q_3(r; x, t)` of eq6.
pub fn q3(r: u32, x: f64, t: f64) -> f64 {
    let rf = r as f64;
    let x2 = x * x;
    let x3 = x2 * x;
    (1.0 + 3.0 * t) * rf.powi(3)
        + (9.0 + 27.0 * t - 9.0 * t * x) * rf.powi(2)
        + (26.0 + 78.0 * t - 63.0 * t * x + 9.0 * t * x2) * rf
        + (24.0 + 72.0 * t - 108.0 * t * x + 36.0 * t * x2 - 3.0 * t * x3)
}

pub type TermStream = Box<dyn Iterator<Item = f64>>;

/// Left-side terms: `weight(n) * t^n * L_{lac*n + shift}^{(order(n))}(x)`
/// for `n = 0, 1, 2, ...`, with the weight carried as a running product.
fn lhs_iter(
    lac: u32,
    shift: u32,
    x: f64,
    t: f64,
    order: impl Fn(u32) -> f64 + 'static,
    weight_ratio: impl Fn(u32) -> f64 + 'static,
) -> TermStream {
    let mut n = 0u32;
    let mut weight = 1.0f64; // weight(n) * t^n
    Box::new(std::iter::from_fn(move || {
        let term = weight * laguerre(lac * n + shift, order(n), x);
        weight *= t * weight_ratio(n);
        n += 1;
        Some(term)
    }))
}

/// The `n`-th left-side term of `id` at `p`, for `n = 0, 1, 2, ...`.
pub fn lhs_terms(id: IdentityId, p: &EvalParams) -> Result<TermStream, IdentityError> {
    validate(id, p)?;
    let (x, t) = (p.x, p.t);
    let egf = |n: u32| 1.0 / (n as f64 + 1.0);
    let plain = |_: u32| 1.0;
    Ok(match id {
        IdentityId::Eq1 => lhs_iter(2, 0, x, t, |_| 0.0, egf),
        IdentityId::Eq2 => lhs_iter(2, 0, x, t, |_| 1.0, egf),
        IdentityId::Eq3 => lhs_iter(2, 0, x, t, |_| 2.0, egf),
        IdentityId::Eq4 => lhs_iter(2, p.k.unwrap(), x, t, |_| 0.0, egf),
        IdentityId::Eq5 => lhs_iter(3, p.k.unwrap(), x, t, |_| 0.0, egf),
        IdentityId::Eq6 => lhs_iter(3, 0, x, t, |_| 1.0, egf),
        IdentityId::Eq7 => {
            let alpha = p.alpha.unwrap();
            lhs_iter(
                2,
                0,
                x,
                t,
                move |_| alpha,
                move |n| {
                    let nf = n as f64;
                    (nf + 0.5) / (nf + 1.0 + alpha / 2.0)
                },
            )
        }
        IdentityId::Eq8 => {
            let m = p.m.unwrap() as f64;
            lhs_iter(
                2,
                0,
                x,
                t,
                move |_| 2.0 * m,
                move |n| {
                    let nf = n as f64;
                    (nf + 0.5) / (nf + 1.0 + m)
                },
            )
        }
        IdentityId::Eq9 => {
            let alpha = p.alpha.unwrap();
            lhs_iter(
                3,
                0,
                x,
                t,
                move |_| alpha,
                move |n| {
                    let nf = n as f64;
                    ((nf + 1.0 / 3.0) * (nf + 2.0 / 3.0))
                        / ((nf + 1.0 + alpha / 3.0) * (nf + (2.0 + alpha) / 3.0))
                },
            )
        }
        IdentityId::Eq10 => lhs_iter(2, 0, x, t, |_| 0.0, plain),
        IdentityId::Eq11 => lhs_iter(3, 0, x, t, |_| 0.0, plain),
        IdentityId::Eq12 => {
            // the order alpha - 2n descends with the index, where the degree
            // recurrence is unstable; use the explicit-sum evaluator instead
            let alpha = p.alpha.unwrap();
            let mut n = 0u32;
            let mut weight = 1.0f64; // t^n
            Box::new(std::iter::from_fn(move || {
                let term = weight * laguerre_alpha_minus_n(2 * n, alpha, x);
                weight *= t;
                n += 1;
                Some(term)
            }))
        }
    })
}

/// `(-1)^r base^r G_r(y)` as a signed log value; zero-safe at `base = 0`
/// and exactly one at `r = 0`.
fn hermite_factor(r: u32, base: f64, y: f64) -> SignedLog {
    if r == 0 {
        return SignedLog::one();
    }
    if base == 0.0 {
        return SignedLog::zero();
    }
    SignedLog::from_f64(-base)
        .powi(r)
        .scale_ln(hermite_imag_ln(r, y))
}

/// Inner `s`-sum shared by eq5 and eq6:
/// `sum_{s=0}^{floor(r/3)} (-t x^3)^s (-1)^{r-3s} (x sqrt(3t))^{r-3s}
///  G_{r-3s}(sqrt(3t)/2) / (s! (r-3s)!)`.
///
/// The sum is finite and always evaluated to completion within its
/// `r`-term; only the outer `r`-series is adaptively truncated.
fn triple_inner(r: u32, x: f64, t: f64) -> SignedLog {
    let base = x * (3.0 * t).sqrt();
    let y = (3.0 * t).sqrt() / 2.0;
    let c = -t * x * x * x;
    let mut sum = SignedLog::zero();
    for s in 0..=r / 3 {
        let term = SignedLog::from_f64(c)
            .powi(s)
            .scale_ln(-(log_factorial(s) + log_factorial(r - 3 * s)))
            .mul(hermite_factor(r - 3 * s, base, y));
        sum = sum.add(term);
    }
    sum
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive Gamma argument by domain validation")
}

/// The `r`-th right-side term of `id` at `p`, with the overall prefactor
/// folded into each term. For eq8 and eq12 the stream is the closed-form
/// value followed by zeros.
pub fn rhs_terms(id: IdentityId, p: &EvalParams) -> Result<TermStream, IdentityError> {
    validate(id, p)?;
    let (x, t) = (p.x, p.t);
    let sq = t.sqrt();
    Ok(match id {
        IdentityId::Eq1 => Box::new((0u32..).map(move |r| {
            hermite_factor(r, x * sq, sq)
                .scale_ln(t - 2.0 * log_factorial(r))
                .to_f64()
        })),
        IdentityId::Eq2 => Box::new((0u32..).map(move |r| {
            hermite_factor(r, x * sq, sq)
                .mul(SignedLog::from_f64(p2(r, x, t)))
                .scale_ln(t - log_factorial(r) - log_factorial(r + 3))
                .to_f64()
        })),
        IdentityId::Eq3 => Box::new((0u32..).map(move |r| {
            hermite_factor(r, x * sq, sq)
                .mul(SignedLog::from_f64(p4(r, x, t)))
                .scale_ln(t - log_factorial(r) - log_factorial(r + 6))
                .to_f64()
        })),
        IdentityId::Eq4 => {
            let k = p.k.unwrap();
            Box::new((0u32..).map(move |r| {
                hermite_factor(r, x * sq, sq)
                    .mul(SignedLog::from_f64(laguerre(k, r as f64, x)))
                    .scale_ln(t + log_factorial(k) - log_factorial(r) - log_factorial(r + k))
                    .to_f64()
            }))
        }
        IdentityId::Eq5 => {
            let k = p.k.unwrap();
            Box::new((0u32..).map(move |r| {
                triple_inner(r, x, t)
                    .mul(SignedLog::from_f64(laguerre(k, r as f64, x)))
                    .scale_ln(t + log_factorial(k) - log_factorial(r + k))
                    .to_f64()
            }))
        }
        IdentityId::Eq6 => Box::new((0u32..).map(move |r| {
            triple_inner(r, x, t)
                .mul(SignedLog::from_f64(q3(r, x, t)))
                .scale_ln(t - log_factorial(r + 4))
                .to_f64()
        })),
        IdentityId::Eq7 => {
            let alpha = p.alpha.unwrap();
            let u = -t * x / (2.0 * (1.0 - t));
            let pre_ln = -(1.0 + alpha) / 2.0 * (1.0 - t).ln();
            Box::new((0u32..).map(move |r| {
                SignedLog::from_f64(laguerre(r, r as f64 + alpha, x / 2.0))
                    .mul(SignedLog::from_f64(u).powi(r))
                    .scale_ln(pre_ln - ln_pochhammer_pos(1.0 + alpha / 2.0, r))
                    .to_f64()
            }))
        }
        IdentityId::Eq8 => {
            let value = closed_form_eq8(p)?;
            Box::new(std::iter::once(value).chain(std::iter::repeat(0.0)))
        }
        IdentityId::Eq9 => {
            let alpha = p.alpha.unwrap();
            let v = -t * x / (9.0 * (1.0 - t));
            let pre_ln = -(1.0 + alpha) / 3.0 * (1.0 - t).ln();
            let a1 = 1.0 + alpha / 3.0;
            let a2 = (2.0 + alpha) / 3.0;
            Box::new((0u32..).map(move |r| {
                let mut inner = SignedLog::zero();
                for s in 0..=r {
                    let term = SignedLog::from_f64(-x)
                        .powi(s)
                        .mul(SignedLog::from_f64(laguerre(
                            s,
                            (s + r) as f64 + alpha,
                            x / 3.0,
                        )))
                        .scale_ln(-log_factorial(r - s) - lg((2 * s + r) as f64 + alpha + 1.0));
                    inner = inner.add(term);
                }
                inner
                    .mul(SignedLog::from_f64(v).powi(r))
                    .scale_ln(
                        pre_ln + lg(3.0 * r as f64 + alpha + 1.0)
                            - ln_pochhammer_pos(a1, r)
                            - ln_pochhammer_pos(a2, r),
                    )
                    .to_f64()
            }))
        }
        IdentityId::Eq10 => {
            let u = -t * x / (2.0 * (1.0 - t));
            let pre_ln = -(1.0 - t).ln();
            Box::new((0u32..).map(move |r| {
                SignedLog::from_f64(laguerre(r, r as f64, x / 2.0))
                    .mul(SignedLog::from_f64(u).powi(r))
                    .scale_ln(pre_ln - ln_pochhammer_pos(0.5, r))
                    .to_f64()
            }))
        }
        IdentityId::Eq11 => {
            let w = -3.0 * t * x / (1.0 - t);
            let pre_ln = -(1.0 - t).ln();
            Box::new((0u32..).map(move |r| {
                let mut inner = SignedLog::zero();
                for s in 0..=r {
                    let term = SignedLog::from_f64(-x)
                        .powi(s)
                        .mul(SignedLog::from_f64(laguerre(s, (s + r) as f64, x / 3.0)))
                        .scale_ln(
                            log_factorial(r) - log_factorial(r - s) - log_factorial(r + 2 * s),
                        );
                    inner = inner.add(term);
                }
                inner
                    .mul(SignedLog::from_f64(w).powi(r))
                    .scale_ln(pre_ln)
                    .to_f64()
            }))
        }
        IdentityId::Eq12 => {
            let value = closed_form_eq12(p)?;
            Box::new(std::iter::once(value).chain(std::iter::repeat(0.0)))
        }
    })
}

/// Closed form of eq8:
/// `m! (1-t)^{-1/2} (x sqrt(t)/2)^{-m} exp(-tx/(1-t)) I_m(x sqrt(t)/(1-t))`.
///
/// The printed identity omits the `Gamma(m+1)` factor; without it the two
/// sides disagree by exactly `m!` for `m >= 2` (checked against the `x -> 0`
/// limit and the Taylor expansion of the left side). At `x = 0` the
/// removable singularity from `(x sqrt(t)/2)^{-m}` cancels against the
/// leading Bessel term, leaving `(1-t)^{-m-1/2}`.
pub fn closed_form_eq8(p: &EvalParams) -> Result<f64, IdentityError> {
    validate(IdentityId::Eq8, p)?;
    let (x, t) = (p.x, p.t);
    let m = p.m.unwrap();
    if t == 0.0 {
        return Ok(1.0);
    }
    if x == 0.0 {
        return Ok((-(m as f64 + 0.5) * (1.0 - t).ln()).exp());
    }
    let z = x * t.sqrt() / (1.0 - t);
    let ln_val = log_factorial(m)
        - 0.5 * (1.0 - t).ln()
        - m as f64 * (x * t.sqrt() / 2.0).ln()
        - t * x / (1.0 - t)
        + bessel_i_ln(m, z);
    Ok(ln_val.exp())
}

/// Closed form of eq12 in real arithmetic:
/// `(1-t)^{alpha/2} cosh( sqrt(t) x - alpha asinh( sqrt(t/(1-t)) ) )`,
/// obtained from the printed complex form via principal branches
/// (`sqrt(t-1) = i sqrt(1-t)`, `arcsin(-iu) = -i asinh(u)`).
pub fn closed_form_eq12(p: &EvalParams) -> Result<f64, IdentityError> {
    validate(IdentityId::Eq12, p)?;
    let (x, t) = (p.x, p.t);
    let alpha = p.alpha.unwrap();
    let arg = t.sqrt() * x - alpha * (t / (1.0 - t)).sqrt().asinh();
    Ok((1.0 - t).powf(alpha / 2.0) * arg.cosh())
}
