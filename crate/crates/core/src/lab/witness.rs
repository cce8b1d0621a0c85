//! Exponential vectors that make the inequalities equalities, and
//! counterexamples showing `1/u + 1/v <= 1` cannot be relaxed.

use super::exponents::ExponentTuple;
use super::ratios::full_holder_ratio;
use super::report::CheckReport;
use super::tolerances::{COUNTEREXAMPLE_MARGIN, SHARPNESS_TOL};
use crate::chaos::ExponentialSum;
use crate::error::{Result, WickError};
use crate::exponent::Exponent;
use crate::numerics::QuadratureRule;

/// `‖E_ζ‖_k = e^{(k−1)|ζ|²/2}` for real `ζ`; the sup norm is infinite unless `ζ = 0`.
pub fn exponential_norm(zeta: &[f64], k: Exponent) -> f64 {
    let sq: f64 = zeta.iter().map(|z| z * z).sum();
    match k {
        Exponent::Finite(k) => ((k - 1.0) * sq / 2.0).exp(),
        Exponent::Infinite if sq == 0.0 => 1.0,
        Exponent::Infinite => f64::INFINITY,
    }
}

fn inv_minus_one(k: Exponent) -> f64 {
    match k {
        Exponent::Finite(k) => 1.0 / (k - 1.0),
        Exponent::Infinite => 0.0,
    }
}

/// `ξ = ê/(√u(p−1))`, `η = ê/(√v(q−1))` along the first axis, for which
/// `‖Γ(1/√u)E_ξ ⋄ Γ(1/√v)E_η‖_r = ‖E_ξ‖_p ‖E_η‖_q`.
pub fn sharpness_witness(e: &ExponentTuple, dim: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    e.validate()?;
    if dim == 0 {
        return Err(WickError::DimensionMismatch { expected: 1, got: 0 });
    }
    let mut xi = vec![0.0; dim];
    let mut eta = vec![0.0; dim];
    xi[0] = e.u.recip().sqrt() * inv_minus_one(e.p);
    eta[0] = e.v.recip().sqrt() * inv_minus_one(e.q);
    Ok((xi, eta))
}

/// Closed-form ratio `‖Γ(1/√u)E_ξ ⋄ Γ(1/√v)E_η‖_r / (‖E_ξ‖_p ‖E_η‖_q)`.
pub fn exponential_ratio(xi: &[f64], eta: &[f64], e: &ExponentTuple) -> f64 {
    let (a, b) = e.damping();
    let sum: Vec<f64> = xi.iter().zip(eta).map(|(x, y)| a * x + b * y).collect();
    exponential_norm(&sum, e.r) / (exponential_norm(xi, e.p) * exponential_norm(eta, e.q))
}

/// The witness scaled by `lambda`, checked by quadrature against ratio 1.
pub fn sharpness_report(e: &ExponentTuple, lambda: f64, rule: &QuadratureRule) -> Result<CheckReport> {
    let (xi, eta) = sharpness_witness(e, 1)?;
    let scale = |z: Vec<f64>| z.into_iter().map(|c| c * lambda).collect::<Vec<_>>();
    let (xi, eta) = (scale(xi), scale(eta));
    let numeric = full_holder_ratio(&ExponentialSum::real(&xi), &ExponentialSum::real(&eta), e, rule)?;
    let closed = exponential_ratio(&xi, &eta, e);
    Ok(CheckReport::equality("sharpness", numeric.lhs, numeric.rhs, SHARPNESS_TOL)
        .with_tuple(e)
        .with_note(format!("lambda = {lambda}; xi = {:.6}, eta = {:.6}; closed-form ratio {closed:.12}", xi[0], eta[0])))
}

/// A scale `t` and direction `(a, b)` with
/// `‖Γ(1/√u)E_{ta} ⋄ Γ(1/√v)E_{tb}‖_p > 1.01 ‖E_{ta}‖_p ‖E_{tb}‖_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample {
    pub t: f64,
    pub direction: (f64, f64),
    pub ratio: f64,
}

/// Geometric ladder `t = 0.25·2^k`, `k = 0..=8`.
pub fn counterexample_ladder() -> impl Iterator<Item = f64> {
    (0..=8).map(|k| 0.25 * 2f64.powi(k))
}

/// Ratio of the two sides along `(ta, tb)` on one axis:
/// `exp((p−1)t²/2 · [(a/√u + b/√v)² − a² − b²])`.
pub fn counterexample_ratio(u: f64, v: f64, p: f64, t: f64, direction: (f64, f64)) -> f64 {
    let (a, b) = direction;
    let mixed = a / u.sqrt() + b / v.sqrt();
    ((p - 1.0) * t * t / 2.0 * (mixed * mixed - a * a - b * b)).exp()
}

/// Top eigenvector of `[[1/u − 1, 1/√(uv)], [1/√(uv), 1/v − 1]]`, scaled so
/// its larger component is 1. Its eigenvalue is positive iff `1/u + 1/v > 1`.
fn worst_direction(u: f64, v: f64) -> (f64, f64) {
    let (m11, m22, m12) = (1.0 / u - 1.0, 1.0 / v - 1.0, 1.0 / (u * v).sqrt());
    let mean = 0.5 * (m11 + m22);
    let lambda = mean + (0.25 * (m11 - m22).powi(2) + m12 * m12).sqrt();
    let (a, b) = if (lambda - m11).abs() >= (lambda - m22).abs() {
        (m12, lambda - m11)
    } else {
        (lambda - m22, m12)
    };
    let top = a.abs().max(b.abs());
    (a / top, b / top)
}

/// Searches the ladder for exponential vectors violating the Hölder
/// inequality at `p = q = r` with `Γ(1/√u), Γ(1/√v)`.
///
/// Fails with [`WickError::NoCounterexample`] when no rung reaches
/// ratio 1.01, which is guaranteed when `1/u + 1/v <= 1`.
pub fn minimality_counterexample(u: f64, v: f64, p: f64) -> Result<Counterexample> {
    if !(u > 0.0 && v > 0.0 && u.is_finite() && v.is_finite()) {
        return Err(WickError::InvalidExponent(format!("need finite u, v > 0, got ({u}, {v})")));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(WickError::InvalidExponent(format!("need finite p > 1, got {p}")));
    }
    let direction = worst_direction(u, v);
    counterexample_ladder()
        .map(|t| Counterexample {
            t,
            direction,
            ratio: counterexample_ratio(u, v, p, t, direction),
        })
        .find(|c| c.ratio > COUNTEREXAMPLE_MARGIN)
        .ok_or_else(|| WickError::NoCounterexample(format!("1/u + 1/v = {}", 1.0 / u + 1.0 / v)))
}

/// Passes when a counterexample exists exactly when `1/u + 1/v > 1`.
pub fn minimality_report(u: f64, v: f64, p: f64) -> CheckReport {
    let excess = 1.0 / u + 1.0 / v;
    let expect = excess > 1.0;
    let exps = |r: CheckReport| {
        r.with_exponents(
            Some(Exponent::Finite(u)),
            Some(Exponent::Finite(v)),
            Some(Exponent::Finite(p)),
            Some(Exponent::Finite(p)),
            Some(Exponent::Finite(p)),
        )
    };
    match minimality_counterexample(u, v, p) {
        Ok(c) => {
            let mut report = CheckReport::inequality("minimality", c.ratio, 1.0, 0.0).with_pass(expect);
            report.residual = Some(c.t);
            exps(report.with_note(format!(
                "1/u+1/v = {excess:.6}; counterexample at t = {}, direction ({:.6}, {:.6})",
                c.t, c.direction.0, c.direction.1
            )))
        }
        Err(WickError::NoCounterexample(reason)) => {
            let report = CheckReport::failure("minimality", format!("no counterexample on the ladder: {reason}"));
            exps(report.with_pass(!expect))
        }
        Err(err) => exps(CheckReport::failure("minimality", err.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_hermite_rule;

    fn f(k: f64) -> Exponent {
        Exponent::Finite(k)
    }

    #[test]
    fn witness_is_sharp() {
        let e = ExponentTuple::holder(2.0, f(3.0)).unwrap();
        let (xi, eta) = sharpness_witness(&e, 2).unwrap();
        assert!((xi[0] - 1.0 / (2f64.sqrt() * 2.0)).abs() < 1e-15);
        assert_eq!(xi[1], 0.0);
        assert_eq!(xi, eta);
        assert!((exponential_ratio(&xi, &eta, &e) - 1.0).abs() < 1e-14);

        let rule = gauss_hermite_rule(64).unwrap();
        let tuple = ExponentTuple::full_holder(2.0, f(2.0), f(4.0)).unwrap();
        for lambda in [1.0, 0.5, 1.5] {
            let report = sharpness_report(&tuple, lambda, &rule).unwrap();
            assert!(report.pass, "{report:?}");
        }
        let (xi, eta) = sharpness_witness(&tuple, 1).unwrap();
        let doubled: Vec<f64> = eta.iter().map(|z| 2.0 * z).collect();
        assert!(exponential_ratio(&xi, &doubled, &tuple) < 1.0 - 1e-3);
    }

    #[test]
    fn known_counterexample() {
        let c = minimality_counterexample(1.5, 1.5, 2.0).unwrap();
        assert_eq!(c.direction, (1.0, 1.0));
        assert!((counterexample_ratio(1.5, 1.5, 2.0, 1.0, (1.0, 1.0)) - (1.0f64 / 3.0).exp()).abs() < 1e-12);
        assert!((counterexample_ratio(1.5, 1.5, 2.0, 1.0, (1.0, 1.0)) - 1.395612).abs() < 1e-6);
        assert!(minimality_counterexample(1.9, 1.9, 2.0).is_ok());
        assert!(minimality_counterexample(1.0, 20.0, 2.0).is_ok());
    }

    #[test]
    fn no_counterexample_on_the_boundary() {
        for t in counterexample_ladder() {
            assert!((counterexample_ratio(2.0, 2.0, 2.0, t, (1.0, 1.0)) - 1.0).abs() < 1e-12);
        }
        assert!(matches!(minimality_counterexample(2.0, 2.0, 2.0), Err(WickError::NoCounterexample(_))));
        assert!(matches!(minimality_counterexample(3.0, 2.0, 1.5), Err(WickError::NoCounterexample(_))));
        assert!(minimality_report(2.0, 2.0, 3.0).pass);
        assert!(minimality_report(1.5, 1.5, 2.0).pass);
    }

    #[test]
    fn sup_norm_of_exponentials() {
        assert_eq!(exponential_norm(&[0.0], Exponent::Infinite), 1.0);
        assert!(exponential_norm(&[0.1], Exponent::Infinite).is_infinite());
    }
}
