//! Exact computer algebra for Ore extensions `E = Q[z1..zn][x; sigma, delta]`.
//!
//! The crate computes the Nakayama automorphism of `E` from closed formulas,
//! machine-checks the Koszul-level lifting identities behind them, and
//! explores the invariant algebra `E^G` and its Zhang-twist structure at a
//! degree truncation.

pub mod endo;
pub mod error;
pub mod expr;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod nakayama;
pub mod ore;
pub mod poly;
pub mod skew;

pub use error::{AlgebraError, Result};
