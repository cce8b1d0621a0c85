//! Finite-dimensional Gaussian Wick calculus with numerical verifiers for
//! Hölder, hypercontractive and interpolated Hölder inequalities on Wick
//! products.
//!
//! The crate is organized in four layers:
//!
//! * [`chaos`]: truncated Hermite chaos expansions, the Wick product, second
//!   quantization `Γ(c)`, exponential vectors and the S-transform.
//! * [`numerics`]: Gauss–Hermite quadrature, grids, Gaussian and
//!   normalized-Lebesgue norms, grid convolution and the projection oracle.
//! * [`lab`]: exponent algebra, sharp constants and the checkers that produce
//!   [`lab::CheckReport`] rows.
//! * [`harness`]: seeded fixtures, run configuration and report emission used
//!   by the `wicklab` binary.

pub mod chaos;
pub mod error;
pub mod exponent;
pub mod harness;
pub mod lab;
pub mod numerics;

pub use chaos::{ChaosExpansion, ExponentialSum, MultiIndex, WickAlgebra};
pub use error::{Result, WickError};
pub use exponent::{conjugate_exponent, Exponent};
pub use num_complex::Complex64;
