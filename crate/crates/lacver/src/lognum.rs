//! Sign-magnitude representation of reals in log space.
//!
//! Series terms in this crate are products and quotients of factorials,
//! Gamma values and powers. Individual factors overflow `f64` long before
//! the assembled term does (e.g. `(r+6)!` overflows near `r = 165` while
//! the full term is tiny), so terms are built as a running sum of
//! log-magnitudes with the sign tracked separately and exponentiated once.

/// A real number stored as `sign * exp(ln_mag)`.
///
/// `sign` is `-1.0`, `0.0` or `1.0`; zero is represented with
/// `ln_mag = -inf` so that products behave without special casing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLog {
    sign: f64,
    ln_mag: f64,
}

impl SignedLog {
    pub const fn zero() -> Self {
        SignedLog {
            sign: 0.0,
            ln_mag: f64::NEG_INFINITY,
        }
    }

    pub const fn one() -> Self {
        SignedLog {
            sign: 1.0,
            ln_mag: 0.0,
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::zero()
        } else {
            SignedLog {
                sign: v.signum(),
                ln_mag: v.abs().ln(),
            }
        }
    }

    /// `sign * exp(ln_mag)` with an explicit sign, for values whose
    /// magnitude is only available in log form.
    pub fn from_sign_ln(sign: f64, ln_mag: f64) -> Self {
        if sign == 0.0 {
            Self::zero()
        } else {
            SignedLog {
                sign: sign.signum(),
                ln_mag,
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0.0
    }

    pub fn to_f64(self) -> f64 {
        self.sign * self.ln_mag.exp()
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        SignedLog {
            sign: self.sign * other.sign,
            ln_mag: self.ln_mag + other.ln_mag,
        }
    }

    /// Multiply by `exp(ln_factor)` (a positive factor given in log form).
    pub fn scale_ln(self, ln_factor: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        SignedLog {
            sign: self.sign,
            ln_mag: self.ln_mag + ln_factor,
        }
    }

    /// Integer power; `x^0 = 1` including `x = 0`.
    pub fn powi(self, n: u32) -> Self {
        if n == 0 {
            return Self::one();
        }
        if self.is_zero() {
            return Self::zero();
        }
        SignedLog {
            sign: if n % 2 == 0 { 1.0 } else { self.sign },
            ln_mag: self.ln_mag * n as f64,
        }
    }

    /// Signed log-sum-exp addition.
    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.ln_mag >= other.ln_mag {
            (self, other)
        } else {
            (other, self)
        };
        // m in [0, 2]; m = 0 on exact cancellation
        let m = 1.0 + hi.sign * lo.sign * (lo.ln_mag - hi.ln_mag).exp();
        if m == 0.0 {
            return Self::zero();
        }
        SignedLog {
            sign: hi.sign,
            ln_mag: hi.ln_mag + m.ln(),
        }
    }
}
