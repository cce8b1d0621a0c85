//! Gaussian `‖·‖_p` and normalized-Lebesgue `‖|·|‖_p` norms.

use num_complex::Complex64;

use super::adaptive::gaussian_expectation_nd;
use super::grid::GridFunction;
use super::quadrature::QuadratureRule;
use crate::chaos::WickAlgebra;
use crate::error::{Result, WickError};
use crate::exponent::Exponent;

/// Largest admissible value of the integrand `|f|^p` on the box faces.
pub const DECAY_TOL: f64 = 1e-14;

/// `(2π)^{−d/2}`, the density of `d_N x` against `dx`.
pub fn normalized_density(dim: usize) -> f64 {
    (2.0 * std::f64::consts::PI).powf(-(dim as f64) / 2.0)
}

/// `‖f‖_p` against the standard Gaussian on `R^dim`.
///
/// Even integer `p` uses the tensor rule, which is exact for polynomial `f`
/// of degree below `2·order/p`. Other finite `p` go through adaptive
/// Gauss–Kronrod integration, since `|f|^p` then has kinks at real zeros and
/// branch points near complex ones. For `p = ∞` this is the maximum of `|f|`
/// over the tensor nodes, which only bounds the essential supremum from below.
pub fn lp_norm_gaussian<F>(f: F, p: Exponent, rule: &QuadratureRule, dim: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    let modulus = |x: &[f64]| -> Result<f64> {
        match f(x) {
            Ok(v) if v.re.is_finite() && v.im.is_finite() => Ok(v.norm()),
            Ok(_) => Err(WickError::NonFinite(x.to_vec())),
            Err(e) => Err(e),
        }
    };
    match p {
        Exponent::Finite(k) if !is_even_integer(k) => {
            check_finite_exponent(k)?;
            let integral = gaussian_expectation_nd(|x| Ok(modulus(x)?.powf(k)), dim)?;
            return Ok(integral.powf(1.0 / k));
        }
        _ => {}
    }
    let mut failure = None;
    let mut acc = 0.0f64;
    rule.for_each_node(dim, |x, w| {
        if failure.is_some() {
            return;
        }
        let value = match modulus(x) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        match p {
            Exponent::Infinite => acc = acc.max(value),
            Exponent::Finite(k) => acc += w * value.powf(k),
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    match p {
        Exponent::Infinite => Ok(acc),
        Exponent::Finite(k) => {
            check_finite_exponent(k)?;
            Ok(acc.powf(1.0 / k))
        }
    }
}

fn is_even_integer(k: f64) -> bool {
    k.fract() == 0.0 && k % 2.0 == 0.0
}

/// `‖φ‖_p` for any element of the Wick algebra.
pub fn gaussian_norm<T: WickAlgebra>(phi: &T, p: Exponent, rule: &QuadratureRule) -> Result<f64> {
    lp_norm_gaussian(|x| phi.eval(x), p, rule, phi.dim())
}

/// `‖|f|‖_p = ((2π)^{−d/2} ∫_box |f|^p dx)^{1/p}` by the trapezoid rule.
///
/// Fails when `|f|^p` exceeds [`DECAY_TOL`] on the box faces, i.e. when the
/// extent is too small for the integrand. For `p = ∞` returns the grid maximum.
pub fn lp_norm_lebesgue(f: &GridFunction, p: Exponent) -> Result<f64> {
    let k = match p {
        Exponent::Infinite => return Ok(f.max_abs()),
        Exponent::Finite(k) => k,
    };
    check_finite_exponent(k)?;
    let edge = f.boundary_max().powf(k);
    if edge > DECAY_TOL {
        return Err(WickError::BoundaryDecay {
            value: edge,
            tolerance: DECAY_TOL,
        });
    }
    let spec = f.spec();
    let integral: f64 = f
        .samples()
        .iter()
        .enumerate()
        .map(|(i, z)| spec.trapezoid_weight(i) * z.norm().powf(k))
        .sum();
    Ok((normalized_density(spec.dim) * integral).powf(1.0 / k))
}

fn check_finite_exponent(k: f64) -> Result<()> {
    if k >= 1.0 && k.is_finite() {
        Ok(())
    } else {
        Err(WickError::InvalidExponent(format!("norm exponent must be >= 1, got {k}")))
    }
}
