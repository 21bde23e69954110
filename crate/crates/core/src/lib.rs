//! Truncated q-series arithmetic and a congruence verifier for colored
//! partition functions `a_k(n)`, whose generating function is
//! `f_2^{k-1} / f_1^k` with `f_k = (q^k; q^k)_inf`.
//!
//! ```
//! use parity_forge::colored::ak_series;
//! use parity_forge::dissection::extract;
//!
//! // a_5(5n + 3) vanishes mod 5.
//! let a5 = ak_series(5, 500);
//! let sub = extract(&a5, 5, 3).unwrap().reduce_mod(5).unwrap();
//! assert!(sub.is_zero());
//! ```

pub mod colored;
pub mod dissection;
pub mod error;
pub mod recipe;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{ParseError, SeriesError};
pub use series::{CoefficientRing, Integers, ModSeries, Series, TruncatedSeries, Zn};
pub use special::EtaQuotient;

/// The guide's code samples, compiled and run as doc-tests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/eta-quotients.md")]
    mod eta_quotients {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/dissection.md")]
    mod dissection {}
    #[doc = include_str!("../../../book/src/colored-partitions.md")]
    mod colored_partitions {}
    #[doc = include_str!("../../../book/src/recipes.md")]
    mod recipes {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/proof-steps.md")]
    mod proof_steps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
