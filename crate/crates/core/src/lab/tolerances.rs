//! Numeric budgets for every check. Pure arithmetic identities sit at rounding
//! level; grid identities carry trapezoid and truncation error.

/// Relative slack on `ratio <= 1` for the inequality checks.
pub const INEQUALITY_SLACK: f64 = 1e-8;

/// Pointwise residual budget for identities evaluated on a grid.
pub const GRID_IDENTITY_TOL: f64 = 1e-6;

/// Residual budget for closed-form exponent and constant identities.
pub const ARITHMETIC_TOL: f64 = 1e-12;

/// `|ratio − 1|` budget on equality witnesses.
pub const SHARPNESS_TOL: f64 = 1e-6;

/// Relative budget for `d = 2` versus squared `d = 1` values.
pub const TENSOR_TOL: f64 = 1e-5;

/// A counterexample must push the ratio to at least this value.
pub const COUNTEREXAMPLE_MARGIN: f64 = 1.01;

/// Additive slack on the sharp Young inequality over grid fixtures.
pub const YOUNG_SLACK: f64 = 1e-6;

/// Lieb supremum: value and argmax budgets for the numerical search.
pub const LIEB_VALUE_TOL: f64 = 1e-8;
pub const LIEB_ARGMAX_TOL: f64 = 1e-5;
