//! Exponent bookkeeping, norm ratios, closed-form identities and witnesses for
//! the Wick-product Hölder inequalities.

pub mod exponents;
pub mod identities;
pub mod lieb;
pub mod ratios;
pub mod report;
pub mod tensor;
pub mod tolerances;
pub mod witness;
pub mod young;

pub use exponents::*;
pub use identities::*;
pub use lieb::*;
pub use ratios::*;
pub use report::*;
pub use tensor::*;
pub use witness::*;
pub use young::*;
