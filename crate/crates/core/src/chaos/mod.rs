//! Exact Wick algebra on truncated Hermite chaos expansions.

mod algebra;
mod expansion;
mod exponential;
mod hermite;
mod multi_index;

pub use algebra::WickAlgebra;
pub use expansion::{ChaosExpansion, ChaosRecord};
pub use exponential::{exponential_chaos, exponential_eval, exponential_tail_bound, ExponentialSum};
pub use hermite::{factorial, hermite_eval, hermite_table};
pub use multi_index::MultiIndex;

/// Default truncation degree for exponential vectors in `dim` coordinates.
pub fn default_exponential_degree(dim: usize) -> u32 {
    if dim <= 1 {
        12
    } else {
        8
    }
}
