//! Norm ratios `‖Γ(a)φ ⋄ Γ(b)ψ‖_r / (‖φ‖_p ‖ψ‖_q)` for the three Wick–Hölder
//! inequalities, evaluated by Gauss–Hermite quadrature.

use num_complex::Complex64;

use super::exponents::{check_conjugate_pair, nelson_exponents, ExponentTuple};
use super::report::CheckReport;
use super::tolerances::INEQUALITY_SLACK;
use crate::chaos::WickAlgebra;
use crate::error::{Result, WickError};
use crate::exponent::Exponent;
use crate::numerics::{gaussian_norm, QuadratureRule};

/// Numerator and denominator of a Wick norm ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormPair {
    pub lhs: f64,
    pub rhs: f64,
}

impl NormPair {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

/// `‖Γ(a)φ ⋄ Γ(b)ψ‖_r` against `‖φ‖_p ‖ψ‖_q`.
pub fn wick_norm_pair<T: WickAlgebra>(
    phi: &T,
    psi: &T,
    damping: (f64, f64),
    exponents: (Exponent, Exponent, Exponent),
    rule: &QuadratureRule,
) -> Result<NormPair> {
    let (a, b) = damping;
    let (p, q, r) = exponents;
    let product = phi
        .second_quantization(Complex64::new(a, 0.0))
        .wick(&psi.second_quantization(Complex64::new(b, 0.0)))?;
    let lhs = gaussian_norm(&product, r, rule)?;
    let phi_norm = gaussian_norm(phi, p, rule)?;
    let psi_norm = gaussian_norm(psi, q, rule)?;
    if phi_norm == 0.0 || psi_norm == 0.0 {
        return Err(WickError::ZeroDenominator(format!(
            "‖φ‖_{p} = {phi_norm}, ‖ψ‖_{q} = {psi_norm}"
        )));
    }
    Ok(NormPair {
        lhs,
        rhs: phi_norm * psi_norm,
    })
}

fn sup_note(p: Exponent) -> Option<&'static str> {
    p.is_infinite()
        .then_some("sup norm estimated by the max over quadrature nodes (lower estimate)")
}

/// `‖Γ(1/√u)φ ⋄ Γ(1/√v)ψ‖_p <= ‖φ‖_p ‖ψ‖_p` for `1/u + 1/v = 1`.
pub fn holder_wick_ratio<T: WickAlgebra>(
    phi: &T,
    psi: &T,
    p: Exponent,
    u: f64,
    v: f64,
    rule: &QuadratureRule,
) -> Result<CheckReport> {
    let (u, v) = (Exponent::Finite(u), Exponent::Finite(v));
    check_conjugate_pair(u, v)?;
    let damping = (u.recip().sqrt(), v.recip().sqrt());
    let pair = wick_norm_pair(phi, psi, damping, (p, p, p), rule)?;
    let mut report = CheckReport::inequality("holder", pair.lhs, pair.rhs, INEQUALITY_SLACK)
        .with_exponents(Some(u), Some(v), Some(p), Some(p), Some(p));
    if let Some(note) = sup_note(p) {
        report = report.with_note(note);
    }
    Ok(report)
}

/// `‖Γ(√((p−1)/(r−1)))φ ⋄ Γ(√((r−p)/(r−1)))ψ‖_r <= ‖φ‖_p ‖ψ‖_∞` for `1 < p <= r`.
///
/// At `r = p` the second factor is `Γ(0)ψ = E[ψ]`.
pub fn nelson_ratio<T: WickAlgebra>(
    phi: &T,
    psi: &T,
    p: f64,
    r: f64,
    rule: &QuadratureRule,
) -> Result<CheckReport> {
    let n = nelson_exponents(p, r)?;
    let a = ((p - 1.0) / (r - 1.0)).sqrt();
    let b = if r == p { 0.0 } else { ((r - p) / (r - 1.0)).sqrt() };
    let exps = (Exponent::Finite(p), Exponent::Infinite, Exponent::Finite(r));
    let pair = wick_norm_pair(phi, psi, (a, b), exps, rule)?;
    Ok(CheckReport::inequality("nelson", pair.lhs, pair.rhs, INEQUALITY_SLACK)
        .with_exponents(
            Some(Exponent::Finite(n.u)),
            Some(n.v),
            Some(Exponent::Finite(p)),
            Some(Exponent::Infinite),
            Some(Exponent::Finite(r)),
        )
        .with_note(sup_note(Exponent::Infinite).unwrap_or_default()))
}

/// `‖Γ(1/√u)φ ⋄ Γ(1/√v)ψ‖_r <= ‖φ‖_p ‖ψ‖_q` under the admissibility conditions.
pub fn full_holder_ratio<T: WickAlgebra>(
    phi: &T,
    psi: &T,
    e: &ExponentTuple,
    rule: &QuadratureRule,
) -> Result<CheckReport> {
    e.validate()?;
    let pair = wick_norm_pair(phi, psi, e.damping(), (e.p, e.q, e.r), rule)?;
    let mut report =
        CheckReport::inequality("full_holder", pair.lhs, pair.rhs, INEQUALITY_SLACK).with_tuple(e);
    if let Some(note) = [e.p, e.q, e.r].into_iter().find_map(sup_note) {
        report = report.with_note(note);
    }
    Ok(report)
}
