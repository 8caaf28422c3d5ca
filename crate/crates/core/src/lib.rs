//! Exact and modular power sums, the congruences they satisfy, and an
//! exhaustive classifier for integer ratios of consecutive alternating power
//! sums.
//!
//! For a query `(k, n)` the classical sum is `S_k(n) = 1^k + ... + (n-1)^k`
//! and the alternating sum is
//! `A_k(n) = (n-1)^k - (n-2)^k + ... ± 1^k`, which is positive for `n > 1`.
//! The crate answers, for every `(k, n)` in a grid, whether
//! `A_k(n+1) / A_k(n)` is an integer, and cross-checks that answer against
//! a closed predicate, residue-class predictions and proof-step inequalities.
//!
//! Arithmetic is generic over [`ExactScalar`]: fixed-width integers report
//! overflow instead of wrapping, and [`ExactInteger`] never overflows.

pub mod classification;
pub mod congruence;
mod error;
pub mod exact_sums;
pub mod fraction;
pub mod harness;
pub mod modular;
pub mod primes;
mod scalar;

pub use error::{Error, Result};
pub use fraction::ReducedFraction;
pub use scalar::ExactScalar;

/// Arbitrary-precision signed integer used wherever values may grow without bound.
pub type ExactInteger = num_bigint::BigInt;

/// Reduced fraction over [`ExactInteger`].
pub type ExactFraction = ReducedFraction<ExactInteger>;

/// Classification record carrying exact values.
pub type ExactRecord = classification::ClassificationRecord<ExactInteger>;

/// Reduced fraction over 128-bit integers, for small grids where overflow is reported.
pub type WideFraction = ReducedFraction<i128>;
