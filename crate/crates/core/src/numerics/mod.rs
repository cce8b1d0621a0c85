//! Gaussian quadrature (fixed Gauss–Hermite and adaptive Gauss–Kronrod), uniform grids, `L^p` norms, normalized convolution and
//! the chaos projection oracle.

mod adaptive;
mod convolution;
mod grid;
mod norms;
mod projection;
mod quadrature;

pub use adaptive::{gaussian_expectation, gaussian_expectation_nd};
pub use convolution::{convolve_normalized, convolve_normalized_with, ConvolutionMethod, CONV_DECAY_TOL};
pub use grid::{GridFunction, GridRecord, GridSpec};
pub use norms::{gaussian_norm, lp_norm_gaussian, lp_norm_lebesgue, normalized_density, DECAY_TOL};
pub use projection::chaos_projection;
pub use quadrature::{gauss_hermite_rule, QuadratureRule, MAX_ORDER};

/// Default quadrature order per axis: 64 in one dimension, 32 in two.
pub fn default_quadrature_order(dim: usize) -> usize {
    if dim <= 1 {
        64
    } else {
        32
    }
}
