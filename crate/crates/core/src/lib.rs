//! Exact counts of partitions whose parts avoid two coprime moduli.
//!
//! `p_{r,s}(n)` counts partitions of `n` in which no part is divisible by `r`
//! or by `s`. The [`hrr`] module evaluates a convergent Rademacher-type series
//! for it; [`qseries`] supplies exact generating-function coefficients and an
//! independent counting oracle; [`numtheory`] holds the Dedekind sums, eta
//! multiplier phases and the closed form of the phase ratio `Omega_{h,k}`.
//!
//! ```
//! use regular_partitions::hrr::{evaluate, HrrParams, TruncationPolicy};
//!
//! let params = HrrParams::new(2, 3, 30).unwrap();
//! let report = evaluate(&params, &TruncationPolicy::default()).unwrap();
//! assert_eq!(report.value, regular_partitions::qseries::oracle_prs(2, 3, 30));
//! ```

pub mod bessel;
pub mod bigfloat;
pub mod cli;
pub mod error;
pub mod hrr;
pub mod numtheory;
pub mod qseries;
pub mod rademacher;

pub use error::{Error, Result};
