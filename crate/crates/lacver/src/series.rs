//! Adaptive truncated summation with compensated accumulation.
//!
//! Every infinite sum in this crate goes through [`sum_adaptive`]: terms are
//! consumed until a run of consecutive terms falls below the relative
//! threshold, or a hard cap is hit. Accumulation uses Kahan error feedback
//! so long slowly-decaying tails do not erode the leading digits.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("non-finite term at index {index}")]
    NonFiniteTerm { index: usize },
}

/// Stopping rule for adaptive summation.
///
/// A term counts as "small" when `|term| <= rel_tol * max(1, |partial|)`;
/// the `max(1, ·)` floor makes the threshold absolute for near-zero sums.
/// Summation stops once `streak` consecutive terms are small (isolated
/// near-zero terms from sign changes must not stop a lacunary series),
/// or after `max_terms` terms.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub streak: usize,
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            rel_tol: 1e-12,
            streak: 3,
            max_terms: 400,
        }
    }
}

impl TruncationPolicy {
    /// Checks the structural invariants: `rel_tol > 0`, `streak >= 1`,
    /// `max_terms >= streak`.
    pub fn is_valid(&self) -> bool {
        self.rel_tol > 0.0 && self.streak >= 1 && self.max_terms >= self.streak
    }
}

/// Value of a truncated series plus convergence diagnostics.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub last_term_mag: f64,
    pub converged: bool,
}

/// Kahan compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let y = term - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }

    /// The running compensation residual.
    pub fn compensation(&self) -> f64 {
        self.err
    }
}

/// Sums `terms` under `policy`.
///
/// `converged` is false iff the cap was hit before the streak completed
/// (or the iterator ran dry early). A non-finite term aborts with
/// [`SeriesError::NonFiniteTerm`] naming the offending index.
pub fn sum_adaptive(
    terms: impl IntoIterator<Item = f64>,
    policy: &TruncationPolicy,
) -> Result<SeriesResult, SeriesError> {
    let mut acc = KahanSum::new();
    let mut small_run = 0usize;
    let mut used = 0usize;
    let mut last_mag = 0.0f64;

    for (index, term) in terms.into_iter().enumerate() {
        if !term.is_finite() {
            return Err(SeriesError::NonFiniteTerm { index });
        }
        acc.add(term);
        used = index + 1;
        last_mag = term.abs();

        if last_mag <= policy.rel_tol * acc.value().abs().max(1.0) {
            small_run += 1;
            if small_run >= policy.streak {
                return Ok(SeriesResult {
                    value: acc.value(),
                    terms_used: used,
                    last_term_mag: last_mag,
                    converged: true,
                });
            }
        } else {
            small_run = 0;
        }

        if used >= policy.max_terms {
            break;
        }
    }

    Ok(SeriesResult {
        value: acc.value(),
        terms_used: used,
        last_term_mag: last_mag,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn leading_one_then_zeros() {
        let policy = TruncationPolicy::default();
        let r = sum_adaptive(std::iter::once(1.0).chain(std::iter::repeat(0.0)), &policy).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.converged);
        assert_eq!(r.terms_used, 1 + policy.streak);
    }

    #[test]
    fn geometric_series() {
        let policy = TruncationPolicy::default();
        let r = sum_adaptive((0..).map(|n| 0.5f64.powi(n)), &policy).unwrap();
        assert!((r.value - 2.0).abs() <= 1e-12 * 2.0);
        assert!(r.converged);
        assert!(
            (40..=46).contains(&r.terms_used),
            "terms_used = {}",
            r.terms_used
        );
    }

    #[test]
    fn cap_behavior() {
        let policy = TruncationPolicy {
            max_terms: 50,
            ..TruncationPolicy::default()
        };
        let r = sum_adaptive(std::iter::repeat(1.0), &policy).unwrap();
        assert!(!r.converged);
        assert_eq!(r.terms_used, 50);
        assert_eq!(r.value, 50.0);
    }

    #[test]
    fn non_finite_term_reports_index() {
        let terms = vec![1.0, 2.0, f64::INFINITY];
        match sum_adaptive(terms, &TruncationPolicy::default()) {
            Err(SeriesError::NonFiniteTerm { index }) => assert_eq!(index, 2),
            other => panic!("expected NonFiniteTerm, got {other:?}"),
        }
    }

    #[test]
    fn isolated_small_term_does_not_stop() {
        // one tiny term sandwiched between O(1) terms, then a real tail
        let terms = vec![1.0, 1e-15, 1.0, 0.0, 0.0, 0.0, 0.0];
        let r = sum_adaptive(terms, &TruncationPolicy::default()).unwrap();
        assert!((r.value - 2.0).abs() <= 1e-14);
        assert!(r.converged);
        assert!(r.terms_used > 3);
    }

    #[test]
    fn compensated_cancellation_probe() {
        // 1 followed by 1e4 copies of 1e-16: plain f64 summation stays at 1.0
        let mut plain = 1.0f64;
        let mut kahan = KahanSum::new();
        kahan.add(1.0);
        for _ in 0..10_000 {
            plain += 1e-16;
            kahan.add(1e-16);
        }
        let exact = 1.0 + 1e-12;
        assert_eq!(plain, 1.0);
        assert!(kahan.value() > plain);
        assert!((kahan.value() - exact).abs() <= 1e-15);

        // same probe through sum_adaptive with stopping disabled
        let policy = TruncationPolicy {
            rel_tol: 1e-300,
            streak: 3,
            max_terms: 10_001,
        };
        let terms = std::iter::once(1.0).chain(std::iter::repeat(1e-16).take(10_000));
        let r = sum_adaptive(terms, &policy).unwrap();
        assert!((r.value - exact).abs() <= 1e-15);
    }

    proptest! {
        #[test]
        fn deterministic(ts in proptest::collection::vec(-1e6f64..1e6, 1..200)) {
            let policy = TruncationPolicy::default();
            let a = sum_adaptive(ts.clone(), &policy).unwrap();
            let b = sum_adaptive(ts, &policy).unwrap();
            prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
            prop_assert_eq!(a.terms_used, b.terms_used);
            prop_assert_eq!(a.converged, b.converged);
        }

        #[test]
        fn streak_soundness(scale in 0.1f64..10.0) {
            // decaying series: if converged, the last `streak` magnitudes were small
            let policy = TruncationPolicy::default();
            let terms: Vec<f64> = (0..200).map(|n| scale * 0.3f64.powi(n)).collect();
            let r = sum_adaptive(terms.clone(), &policy).unwrap();
            prop_assert!(r.converged);
            let thresh = policy.rel_tol * r.value.abs().max(1.0);
            for k in 0..policy.streak {
                prop_assert!(terms[r.terms_used - 1 - k].abs() <= thresh);
            }
        }
    }
}
