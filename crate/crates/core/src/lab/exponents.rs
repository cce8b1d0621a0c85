//! Exponent bookkeeping: conjugates, the admissibility conditions linking
//! `(u, v, p, q, r)`, and the constants derived from them.

use serde::{Deserialize, Serialize};

use super::tolerances::ARITHMETIC_TOL;
use crate::error::{Result, WickError};
use crate::exponent::Exponent;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= ARITHMETIC_TOL * a.abs().max(b.abs()).max(1.0)
}

/// `1/(k − 1)`, zero at `k = ∞`.
fn inv_minus_one(k: Exponent) -> f64 {
    match k {
        Exponent::Finite(k) => 1.0 / (k - 1.0),
        Exponent::Infinite => 0.0,
    }
}

fn invalid(msg: impl Into<String>) -> WickError {
    WickError::InvalidExponent(msg.into())
}

fn check_above_one(name: &str, k: Exponent) -> Result<()> {
    match k {
        Exponent::Finite(k) if !(k > 1.0) || k.is_nan() => Err(invalid(format!("{name} = {k} must exceed 1"))),
        _ => Ok(()),
    }
}

/// Checks `1/u + 1/v = 1` with `u, v >= 1` (`v = ∞` only with `u = 1`).
pub fn check_conjugate_pair(u: Exponent, v: Exponent) -> Result<()> {
    for (name, k) in [("u", u), ("v", v)] {
        if let Exponent::Finite(k) = k {
            if !(k >= 1.0) {
                return Err(invalid(format!("{name} = {k} must be at least 1")));
            }
        }
    }
    let sum = u.recip() + v.recip();
    if !close(sum, 1.0) {
        return Err(invalid(format!("1/u + 1/v = {sum} differs from 1")));
    }
    Ok(())
}

/// The exponents `(u, v, p, q, r)` of a Wick–Hölder inequality.
///
/// Invariants: `1/u + 1/v = 1`, `1/(u(p−1)) + 1/(v(q−1)) = 1/(r−1)`, its dual
/// form `p'/u + q'/v = r'`, and `min(p, q) <= r <= max(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub u: Exponent,
    pub v: Exponent,
    pub p: Exponent,
    pub q: Exponent,
    pub r: Exponent,
}

impl ExponentTuple {
    pub fn new(u: Exponent, v: Exponent, p: Exponent, q: Exponent, r: Exponent) -> Result<Self> {
        let tuple = ExponentTuple { u, v, p, q, r };
        tuple.validate()?;
        Ok(tuple)
    }

    /// `v = u'` and `r` solved from `(u, v, p, q)`.
    pub fn full_holder(u: f64, p: Exponent, q: Exponent) -> Result<Self> {
        let u = Exponent::Finite(u);
        let v = u.conjugate_with_one()?;
        let r = full_holder_solve(u, v, p, q)?;
        ExponentTuple::new(u, v, p, q, r)
    }

    /// The `p = q = r` specialization.
    pub fn holder(u: f64, p: Exponent) -> Result<Self> {
        let u = Exponent::Finite(u);
        let v = u.conjugate_with_one()?;
        ExponentTuple::new(u, v, p, p, p)
    }

    /// The `q = ∞` specialization: `u = (r−1)/(p−1)`, `v = (r−1)/(r−p)`.
    pub fn nelson(p: f64, r: f64) -> Result<Self> {
        let n = nelson_exponents(p, r)?;
        ExponentTuple::new(
            Exponent::Finite(n.u),
            n.v,
            Exponent::Finite(p),
            Exponent::Infinite,
            Exponent::Finite(r),
        )
    }

    pub fn validate(&self) -> Result<()> {
        check_conjugate_pair(self.u, self.v)?;
        check_above_one("p", self.p)?;
        check_above_one("q", self.q)?;
        check_above_one("r", self.r)?;
        let c1 = self.cond1_residual();
        if !(c1.abs() <= ARITHMETIC_TOL * (1.0 + inv_minus_one(self.r))) {
            return Err(invalid(format!("1/(u(p−1)) + 1/(v(q−1)) − 1/(r−1) = {c1:e}")));
        }
        let c2 = self.cond2_residual()?;
        if !(c2.abs() <= ARITHMETIC_TOL * (1.0 + self.r.conjugate()?.value())) {
            return Err(invalid(format!("p'/u + q'/v − r' = {c2:e}")));
        }
        let (lo, hi) = if self.p.value() <= self.q.value() {
            (self.p.value(), self.q.value())
        } else {
            (self.q.value(), self.p.value())
        };
        let r = self.r.value();
        if r < lo * (1.0 - ARITHMETIC_TOL) || r > hi * (1.0 + ARITHMETIC_TOL) {
            return Err(invalid(format!("r = {r} outside [min(p,q), max(p,q)] = [{lo}, {hi}]")));
        }
        Ok(())
    }

    pub fn p_conj(&self) -> f64 {
        self.p.conjugate().expect("validated").value()
    }

    pub fn q_conj(&self) -> f64 {
        self.q.conjugate().expect("validated").value()
    }

    pub fn r_conj(&self) -> f64 {
        self.r.conjugate().expect("validated").value()
    }

    /// `1/(u(p−1)) + 1/(v(q−1)) − 1/(r−1)`.
    pub fn cond1_residual(&self) -> f64 {
        self.u.recip() * inv_minus_one(self.p) + self.v.recip() * inv_minus_one(self.q)
            - inv_minus_one(self.r)
    }

    /// `p'/u + q'/v − r'`.
    pub fn cond2_residual(&self) -> Result<f64> {
        Ok(self.p.conjugate()?.value() * self.u.recip() + self.q.conjugate()?.value() * self.v.recip()
            - self.r.conjugate()?.value())
    }

    pub fn is_finite(&self) -> bool {
        [self.u, self.v, self.p, self.q, self.r].iter().all(|k| !k.is_infinite())
    }

    /// Second-quantization parameters `(1/√u, 1/√v)`, with `1/√∞ = 0`.
    pub fn damping(&self) -> (f64, f64) {
        (self.u.recip().sqrt(), self.v.recip().sqrt())
    }
}

/// Solves `1/(u(p−1)) + 1/(v(q−1)) = 1/(r−1)` for `r`, then confirms the dual
/// form `p'/u + q'/v = r'`.
pub fn full_holder_solve(u: Exponent, v: Exponent, p: Exponent, q: Exponent) -> Result<Exponent> {
    check_conjugate_pair(u, v)?;
    check_above_one("p", p)?;
    check_above_one("q", q)?;
    let sum = u.recip() * inv_minus_one(p) + v.recip() * inv_minus_one(q);
    let r = if sum == 0.0 {
        Exponent::Infinite
    } else {
        Exponent::Finite(1.0 + 1.0 / sum)
    };
    let dual = p.conjugate()?.value() * u.recip() + q.conjugate()?.value() * v.recip();
    let r_conj = r.conjugate()?.value();
    if !close(dual, r_conj) {
        return Err(invalid(format!("dual form p'/u + q'/v = {dual} but r' = {r_conj}")));
    }
    Ok(r)
}

/// Exponents introduced for the hypercontractive case `1 < p <= r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelsonExponents {
    pub u: f64,
    pub v: Exponent,
    pub s_prime: f64,
    /// Young exponent with `1/r + 1 = 1/p + 1/q`.
    pub q_young: Exponent,
}

/// `u = (r−1)/(p−1)`, `v = (r−1)/(r−p)`, `s' = r/p` and the Young exponent,
/// each cross-checked against its expression in conjugates
/// (`u = rp'/(pr')`, `v = q'/(pr')`, `s' = r'v/(r'v − 1)`).
pub fn nelson_exponents(p: f64, r: f64) -> Result<NelsonExponents> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(invalid(format!("p = {p} must satisfy 1 < p < ∞")));
    }
    if !(r.is_finite()) || r < p * (1.0 - ARITHMETIC_TOL) {
        return Err(invalid(format!("need p <= r < ∞, got p = {p}, r = {r}")));
    }
    // r a rounding error away from p is the endpoint r = p
    let r = if close(r, p) { p } else { r };
    let u = (r - 1.0) / (p - 1.0);
    let v = if r == p {
        Exponent::Infinite
    } else {
        Exponent::Finite((r - 1.0) / (r - p))
    };
    let s_prime = r / p;
    let q_young = if r == p {
        Exponent::Finite(1.0)
    } else {
        Exponent::Finite(1.0 / (1.0 / r + 1.0 - 1.0 / p))
    };

    let p_conj = p / (p - 1.0);
    let r_conj = r / (r - 1.0);
    let q_conj = q_young.conjugate_with_one()?;
    if !close(u, r * p_conj / (p * r_conj)) {
        return Err(invalid("u differs from rp'/(pr')"));
    }
    match (v, q_conj) {
        (Exponent::Finite(v), Exponent::Finite(qc)) => {
            if !close(v, qc / (p * r_conj)) {
                return Err(invalid("v differs from q'/(pr')"));
            }
            let s = r_conj * v;
            if !close(s / (s - 1.0), s_prime) {
                return Err(invalid("s' differs from r/p"));
            }
        }
        (Exponent::Infinite, Exponent::Infinite) => {
            // s = r'v = ∞, so s' = 1 = r/p
            if !close(s_prime, 1.0) {
                return Err(invalid("degenerate endpoint needs r = p"));
            }
        }
        _ => return Err(invalid("v and q' disagree on finiteness")),
    }
    Ok(NelsonExponents {
        u,
        v,
        s_prime,
        q_young,
    })
}

/// `C_k² = k^{1/k} / k'^{1/k'}`, with `C_1 = C_∞ = 1`.
pub fn young_factor_sq(k: Exponent) -> Result<f64> {
    let conj = k.conjugate_with_one()?;
    Ok(k.self_power() / conj.self_power())
}

/// Sharp constant `(C_p C_q / C_r)^d` of Young's convolution inequality,
/// valid for `1/p + 1/q = 1/r + 1`.
pub fn sharp_young_constant(p: Exponent, q: Exponent, r: Exponent, dim: usize) -> Result<f64> {
    for (name, k) in [("p", p), ("q", q), ("r", r)] {
        if let Exponent::Finite(k) = k {
            if !(k >= 1.0) {
                return Err(invalid(format!("{name} = {k} must be at least 1")));
            }
        }
    }
    let lhs = p.recip() + q.recip();
    let rhs = r.recip() + 1.0;
    if !close(lhs, rhs) {
        return Err(invalid(format!("1/p + 1/q = {lhs} but 1/r + 1 = {rhs}")));
    }
    let c_sq = young_factor_sq(p)? * young_factor_sq(q)? / young_factor_sq(r)?;
    Ok(c_sq.sqrt().powi(dim as i32))
}

/// `α = q'/(v√(p'q'r'))`, `β = r'/√(p'q'r')`, `γ = p'/(u√(p'q'r'))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiebParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl LiebParams {
    pub fn new(e: &ExponentTuple) -> Result<Self> {
        let (u, v) = match (e.u, e.v) {
            (Exponent::Finite(u), Exponent::Finite(v)) => (u, v),
            _ => return Err(invalid("kernel parameters need finite u and v")),
        };
        let (pc, qc, rc) = (e.p_conj(), e.q_conj(), e.r_conj());
        let root = (pc * qc * rc).sqrt();
        Ok(LiebParams {
            alpha: qc / (v * root),
            beta: rc / root,
            gamma: pc / (u * root),
        })
    }

    /// `α + γ − β`.
    pub fn sum_residual(&self) -> f64 {
        self.alpha + self.gamma - self.beta
    }

    /// `1/(pv) + 1/(qu) + β² − 1`.
    pub fn j1_residual(&self, e: &ExponentTuple) -> f64 {
        e.p.recip() * e.v.recip() + e.q.recip() * e.u.recip() + self.beta * self.beta - 1.0
    }

    /// `γ²/(pv) + α²/(qu) + 1/(pquv) − 1/(uvr)`.
    pub fn j2_residual(&self, e: &ExponentTuple) -> f64 {
        let (ip, iq, ir, iu, iv) = (e.p.recip(), e.q.recip(), e.r.recip(), e.u.recip(), e.v.recip());
        self.gamma * self.gamma * ip * iv + self.alpha * self.alpha * iq * iu + ip * iq * iu * iv
            - iu * iv * ir
    }
}

/// A normalized Gaussian trial function `c e^{−s x²/2}` with `‖|·|‖_p = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTrial {
    pub scale: f64,
    pub p: f64,
    pub normalization: f64,
}

impl GaussianTrial {
    /// `c = (√(p s))^{1/p}`.
    pub fn new(scale: f64, p: f64) -> Result<Self> {
        if !(scale > 0.0) || !(p >= 1.0) || !p.is_finite() {
            return Err(invalid(format!("trial needs s > 0 and finite p >= 1, got s = {scale}, p = {p}")));
        }
        Ok(GaussianTrial {
            scale,
            p,
            normalization: (p * scale).sqrt().powf(1.0 / p),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.normalization * (-0.5 * self.scale * x * x).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(k: f64) -> Exponent {
        Exponent::Finite(k)
    }

    #[test]
    fn solve_examples() {
        assert!(close(full_holder_solve(f(2.0), f(2.0), f(3.0), f(3.0)).unwrap().value(), 3.0));
        let r = full_holder_solve(f(2.0), f(2.0), f(2.0), f(4.0)).unwrap().value();
        assert!(close(r, 2.5));
        // p'/u + q'/v = 1 + 2/3 = 5/3 = r'
        let e = ExponentTuple::new(f(2.0), f(2.0), f(2.0), f(4.0), f(r)).unwrap();
        assert!(e.cond2_residual().unwrap().abs() < 1e-12);
        assert!(close(e.r_conj(), 5.0 / 3.0));
        // q = ∞ kills the second term
        let r_inf = full_holder_solve(f(3.0), f(1.5), f(2.0), Exponent::Infinite).unwrap().value();
        assert!(close(1.0 / (r_inf - 1.0), 1.0 / 3.0));
        assert!(full_holder_solve(f(2.0), f(3.0), f(2.0), f(2.0)).is_err());
    }

    #[test]
    fn nelson_examples() {
        let n = nelson_exponents(2.0, 4.0).unwrap();
        assert!(close(n.u, 3.0));
        assert!(close(n.v.value(), 1.5));
        assert!(close(n.s_prime, 2.0));
        assert!(close(n.q_young.value(), 4.0 / 3.0));
        // rp'/(pr') = 4·2/(2·4/3) = 3
        assert!(close(4.0 * 2.0 / (2.0 * 4.0 / 3.0), n.u));

        let degenerate = nelson_exponents(1.7, 1.7).unwrap();
        assert_eq!(nelson_exponents(1.5, 1.5 + 2e-16).unwrap().v, Exponent::Infinite);
        assert_eq!(nelson_exponents(1.5, 1.5).unwrap().q_young, Exponent::Finite(1.0));
        assert_eq!(degenerate.u, 1.0);
        assert_eq!(degenerate.v, Exponent::Infinite);
        assert!(nelson_exponents(3.0, 2.0).is_err());
        assert!(nelson_exponents(1.0, 2.0).is_err());

        let e = ExponentTuple::nelson(2.0, 4.0).unwrap();
        assert_eq!(e.q, Exponent::Infinite);
        assert!(e.cond1_residual().abs() < 1e-12);
    }

    #[test]
    fn young_constants() {
        assert_eq!(sharp_young_constant(f(2.0), f(2.0), Exponent::Infinite, 1).unwrap(), 1.0);
        for q in [1.5, 2.0, 3.0] {
            let c = sharp_young_constant(f(1.0), f(q), f(q), 2).unwrap();
            assert!((c - 1.0).abs() < 1e-15);
        }
        let c = sharp_young_constant(f(4.0 / 3.0), f(4.0 / 3.0), f(2.0), 1).unwrap();
        let expected = (4.0f64 / 3.0).powf(0.75) / 4f64.powf(0.25);
        assert!((c - expected).abs() < 1e-14);
        assert!((c - 0.877383).abs() < 1e-6);
        assert!(sharp_young_constant(f(2.0), f(2.0), f(2.0), 1).is_err());
    }

    #[test]
    fn lieb_parameters_symmetric() {
        let e = ExponentTuple::holder(2.0, f(2.0)).unwrap();
        let lp = LiebParams::new(&e).unwrap();
        assert!((lp.beta * lp.beta - 0.5).abs() < 1e-15);
        assert!((lp.alpha * lp.alpha - 0.125).abs() < 1e-15);
        assert!((lp.gamma * lp.gamma - 0.125).abs() < 1e-15);
        assert!(lp.sum_residual().abs() < 1e-15);
        assert!(lp.j1_residual(&e).abs() < 1e-15);
        assert!(lp.j2_residual(&e).abs() < 1e-15);
    }

    #[test]
    fn tuple_validation() {
        assert!(ExponentTuple::new(f(2.0), f(2.0), f(2.0), f(4.0), f(3.0)).is_err());
        assert!(ExponentTuple::new(f(2.0), f(3.0), f(2.0), f(2.0), f(2.0)).is_err());
        assert!(ExponentTuple::holder(2.0, f(1.0)).is_err());
        let e = ExponentTuple::full_holder(4.0, f(1.5), f(4.0)).unwrap();
        let r = e.r.value();
        assert!((1.5..=4.0).contains(&r));
    }

    #[test]
    fn trial_normalization() {
        let t = GaussianTrial::new(0.25, 2.0).unwrap();
        assert!((t.normalization - 0.5f64.powf(0.25)).abs() < 1e-15);
        let mass = (t.normalization.powf(2.0) / (2.0 * 0.25f64).sqrt() - 1.0).abs();
        assert!(mass < 1e-15);
        assert!(GaussianTrial::new(-1.0, 2.0).is_err());
    }
}
