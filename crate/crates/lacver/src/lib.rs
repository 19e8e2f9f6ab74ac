//! Lacunary generating-function identities for Laguerre polynomials.
//!
//! Twelve identities relate lacunary Laguerre series (sums over every
//! second or third polynomial) to restructured series over
//! imaginary-argument Hermite factors, shifted-order Laguerre values,
//! modified Bessel functions, or elementary closed forms. This crate
//! implements both sides of each identity as independently evaluable term
//! streams and verifies, at configurable precision over parameter grids,
//! that left equals right.
//!
//! ```
//! use lacver::harness::{verify, VerificationRecord};
//! use lacver::identities::{EvalParams, IdentityId};
//! use lacver::series::TruncationPolicy;
//!
//! let record = verify(
//!     IdentityId::Eq1,
//!     &EvalParams::new(1.0, 0.3),
//!     1e-9,
//!     &TruncationPolicy::default(),
//! )
//! .unwrap();
//! assert!(record.pass);
//! ```
//!
//! The `lacver` binary exposes the same machinery as `list`, `verify`,
//! `sweep`, and `terms` subcommands.

pub mod cli;
pub mod harness;
pub mod identities;
pub mod lognum;
pub mod series;
pub mod specfun;

pub use harness::{cross_checks, sweep, verify, ParamGrid, SweepTarget, VerificationRecord};
pub use identities::{EvalParams, IdentityDescriptor, IdentityId};
pub use series::{sum_adaptive, SeriesResult, TruncationPolicy};

// The guide's code blocks double as doc-tests so the book cannot drift
// from the library.
#[cfg(doctest)]
mod book {
    macro_rules! book_chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    book_chapter!(introduction, "../../../book/src/introduction.md");
    book_chapter!(special_functions, "../../../book/src/special-functions.md");
    book_chapter!(identities, "../../../book/src/identities.md");
    book_chapter!(series, "../../../book/src/series.md");
    book_chapter!(verification, "../../../book/src/verification.md");
    book_chapter!(cli, "../../../book/src/cli.md");
}
