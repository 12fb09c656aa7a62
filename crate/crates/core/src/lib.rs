//! Permutation statistics restricted to position and value sets.
//!
//! For sets `X, Y ⊆ {1, 2, ...}` this crate evaluates the four statistic
//! families `des`, `adj`, `val` and `exc` on permutations, computes their
//! distributions over `S_n` by independent routes (exhaustive enumeration,
//! insertion recurrences and closed forms), constructs the bijections that
//! explain their equidistributions, checks the residue-class identity
//! families, and tests the open joint-distribution conjectures numerically.
//!
//! All counting is exact: coefficients are arbitrary-precision integers.

pub mod arith;
pub mod conjectures;
pub mod distribution;
pub mod error;
pub mod identities;
pub mod permutation;
pub mod setspec;
pub mod stats;
pub mod transforms;
pub mod verify;

pub use distribution::{Distribution, Method, Poly};
pub use error::{Error, Result};
pub use permutation::{CycleForm, Permutation, DEFAULT_ENUMERATION_CAP};
pub use setspec::SetSpec;
pub use stats::StatId;
