//! Numerical laboratory for chirp counterexamples to Hölder-type bounds for
//! operators whose symbol is a product of `k` generic `n`-linear Hilbert
//! transform symbols.
//!
//! The crate is organised bottom-up:
//!
//! - [`phase`]: monomial enumeration and the linear system whose nullspace
//!   yields the chirp coefficients.
//! - [`osc1d`]: `sinc`, the sine and cosine integrals, iterated averages
//!   `H^l F`, and the cube identity reducing `∫_{[-N,N]^k} sin(∏t)/∏t` to a
//!   one-dimensional integral.
//! - [`geometry`]: strips, support polytopes, slices, inscribed cubes and
//!   bounding boxes.
//! - [`integrate`]: oscillatory integrals over support polytopes, the
//!   principal-value tensor oracle, complements and dyadic shells.
//! - [`experiments`]: sweeps over `N`, growth-exponent fitting and verdicts.
//! - [`cli`]: configuration files, result records and the exit-code contract
//!   used by the `chirplab` binary.

// `!(a < b)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod integrate;
pub mod linalg;
pub mod osc1d;
pub mod phase;
pub mod quad;

pub use error::{Error, Result};
