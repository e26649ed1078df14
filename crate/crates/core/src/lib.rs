//! Exact-arithmetic machinery for deciding whether
//!
//! ```text
//!     x^2 + (2k - 1)^y = k^z
//! ```
//!
//! has positive-integer solutions with y in {3, 5} for a given k > 1, and
//! for emitting machine-checkable certificates when the answer is "no".
//!
//! Everything here is exact: big integers, integer polynomials, and exact
//! comparisons of quadratic-surd magnitudes via squared cross-multiplication.
//! No floating point participates in any decision.
//!
//! Organization:
//!
//! * [`bigarith`] - integer square roots, Jacobi symbols, primality,
//!   budgeted factorization.
//! * [`intpoly`] - dense integer polynomials, truncated square roots,
//!   positivity thresholds.
//! * [`sandwich`] - the square-sandwich criterion: certifies that
//!   `X^2 = F(Y)` has no positive solutions by trapping `F` between
//!   consecutive squares beyond a computed threshold and scanning the
//!   finite remainder.
//! * [`pell`] - continued fractions of surds, least Pell solutions, and
//!   arithmetic in Z[sqrt(D)].
//! * [`qforms`] - reduced indefinite binary quadratic forms and class
//!   numbers via cycle enumeration.
//! * [`normrep`] - fundamental solutions of X^2 - D*Y^2 = K^Z inside the
//!   standard height window.
//! * [`engine`] - the decision pipeline combining all criteria, plus the
//!   brute-force oracle and density sweeps.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bigarith;
pub mod engine;
pub mod intpoly;
pub mod normrep;
pub mod pell;
pub mod qforms;
pub mod sandwich;

pub use engine::{Engine, EngineConfig, OddExponent, Status, Verdict};
