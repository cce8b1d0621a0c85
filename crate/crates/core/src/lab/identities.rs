//! The convolution–Wick identity on a grid and the closed-form constant
//! identities behind the sharp inequalities.

use num_complex::Complex64;

use super::exponents::{nelson_exponents, young_factor_sq, ExponentTuple, LiebParams};
use super::report::CheckReport;
use super::tolerances::{ARITHMETIC_TOL, GRID_IDENTITY_TOL};
use crate::chaos::WickAlgebra;
use crate::error::{Result, WickError};
use crate::exponent::Exponent;
use crate::numerics::{convolve_normalized_with, ConvolutionMethod, GridFunction, GridSpec};

/// Boundary bound on `|f(x−y) g(y)|` accepted by [`verify_conv_wick_identity`].
///
/// The truncation error of the box convolution is a fraction of this bound,
/// so it is tied to the identity tolerance rather than to machine precision.
pub const IDENTITY_DECAY_TOL: f64 = GRID_IDENTITY_TOL;

fn damped<T: WickAlgebra>(phi: &T, scale: f64, var: f64, spec: GridSpec) -> Result<GridFunction> {
    GridFunction::try_from_fn(spec, |x| {
        let mut y = [0.0; 2];
        let mut sq = 0.0;
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = xi * scale;
            sq += xi * xi;
        }
        Ok(phi.eval(&y[..x.len()])? * (-sq / (2.0 * var)).exp())
    })
}

/// Checks
/// `[φ(x/√v) e^{−|x|²/(2v)}] ⋆ [ψ(x/√u) e^{−|x|²/(2u)}]
///   = [Γ(1/√u)φ ⋄ Γ(1/√v)ψ](x/√(uv)) e^{−|x|²/(2uv)}`
/// at every grid node, reporting the largest pointwise residual.
pub fn verify_conv_wick_identity<T: WickAlgebra>(
    phi: &T,
    psi: &T,
    u: f64,
    v: f64,
    grid: GridSpec,
) -> Result<CheckReport> {
    let (ue, ve) = (Exponent::Finite(u), Exponent::Finite(v));
    super::exponents::check_conjugate_pair(ue, ve)?;
    if !(u.is_finite() && v.is_finite()) {
        return Err(WickError::InvalidExponent("the identity needs finite u and v".into()));
    }
    if phi.dim() != grid.dim || psi.dim() != grid.dim {
        return Err(WickError::DimensionMismatch {
            expected: grid.dim,
            got: if phi.dim() != grid.dim { phi.dim() } else { psi.dim() },
        });
    }
    let (a, b) = (1.0 / u.sqrt(), 1.0 / v.sqrt());
    let f = damped(phi, b, v, grid)?;
    let g = damped(psi, a, u, grid)?;
    let method = ConvolutionMethod::default_for(grid.dim);
    let lhs = convolve_normalized_with(&f, &g, method, IDENTITY_DECAY_TOL)?;
    let edge = (f.boundary_max() * g.max_abs()).max(f.max_abs() * g.boundary_max());

    let product = phi
        .second_quantization(Complex64::new(a, 0.0))
        .wick(&psi.second_quantization(Complex64::new(b, 0.0)))?;
    let rhs = damped(&product, 1.0 / (u * v).sqrt(), u * v, grid)?;
    let residual = lhs.max_diff(&rhs)?;
    Ok(CheckReport::residual("conv_wick", residual, GRID_IDENTITY_TOL)
        .with_exponents(Some(ue), Some(ve), None, None, None)
        .with_note(format!(
            "grid L={} h={}; boundary product {edge:.1e}",
            grid.extent, grid.step
        )))
    .map(|mut report| {
        report.lhs = lhs.max_abs();
        report.rhs = rhs.max_abs();
        report
    })
}

fn lattice() -> impl Iterator<Item = (f64, f64)> {
    const PTS: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
    PTS.into_iter().flat_map(|x| PTS.into_iter().map(move |y| (x, y)))
}

fn scaled_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// `C = C_p² C_q² s'^{2/r} p'^{1/q} v^{1/q'} / (C_r² u^{1/r} q^{1/q} r'^{1/q})`
/// for the hypercontractive pair `(p, r)`, `q` the Young exponent; equals 1.
pub fn nelson_constant(p: f64, r: f64) -> Result<f64> {
    let n = nelson_exponents(p, r)?;
    let q = n.q_young.value();
    let q_conj = n.q_young.conjugate_with_one()?;
    let (pc, rc) = (p / (p - 1.0), r / (r - 1.0));
    // v^{1/q'} → 1 at the endpoint r = p, where q = 1 and q' = v = ∞
    let v_term = match (n.v, q_conj) {
        (Exponent::Finite(v), Exponent::Finite(qc)) => v.powf(1.0 / qc),
        _ => 1.0,
    };
    let num = young_factor_sq(Exponent::Finite(p))?
        * young_factor_sq(n.q_young)?
        * n.s_prime.powf(2.0 / r)
        * pc.powf(1.0 / q)
        * v_term;
    let den = young_factor_sq(Exponent::Finite(r))? * n.u.powf(1.0 / r) * q.powf(1.0 / q) * rc.powf(1.0 / q);
    Ok(num / den)
}

/// Largest gap between
/// `(x−y)²/(2p'v) + y²/(2u) − x²/(2r'uv)` and `(x − r'vy)²/(2p'r'v²)`
/// over a 5×5 lattice, for the hypercontractive pair `(p, r)`.
pub fn nelson_square_residual(p: f64, r: f64) -> Result<f64> {
    let n = nelson_exponents(p, r)?;
    let (pc, rc, u) = (p / (p - 1.0), r / (r - 1.0), n.u);
    Ok(lattice()
        .map(|(x, y)| match n.v {
            Exponent::Finite(v) => {
                let e = (x - y).powi(2) / (2.0 * pc * v) + y * y / (2.0 * u) - x * x / (2.0 * rc * u * v);
                let square = (x - rc * v * y).powi(2) / (2.0 * pc * rc * v * v);
                scaled_gap(e, square)
            }
            // v = ∞: both sides reduce to their y² terms
            Exponent::Infinite => scaled_gap(y * y / (2.0 * u), rc * y * y / (2.0 * pc)),
        })
        .fold(0.0, f64::max))
}

/// Largest gap between
/// `(x−y)²/(2p'v) + y²/(2q'u) − x²/(2r'uv)` and `(q'x/v − r'y)²/(2p'q'r')`
/// over a 5×5 lattice.
pub fn holder_square_residual(e: &ExponentTuple) -> Result<f64> {
    let (u, v) = match (e.u, e.v) {
        (Exponent::Finite(u), Exponent::Finite(v)) => (u, v),
        _ => return Err(WickError::InvalidExponent("perfect square needs finite u, v".into())),
    };
    let (pc, qc, rc) = (e.p_conj(), e.q_conj(), e.r_conj());
    Ok(lattice()
        .map(|(x, y)| {
            let form = (x - y).powi(2) / (2.0 * pc * v) + y * y / (2.0 * qc * u) - x * x / (2.0 * rc * u * v);
            let square = (qc * x / v - rc * y).powi(2) / (2.0 * pc * qc * rc);
            scaled_gap(form, square)
        })
        .fold(0.0, f64::max))
}

/// The two weighted AM–GM steps, as `(lhs, rhs)` at `(S, T)`:
/// `(S/(pv) + T/(qu) + β²)^{1/r'} >= S^{1/(pvr')} T^{1/(qur')}` and
/// `(γ²S/(pv) + α²T/(qu) + ST/(pquv))^{1/r}
///   >= (uvr)^{−1/r} S^{uγ²/p + 1/(pq)} T^{vα²/q + 1/(pq)}`.
pub fn jensen_sides(e: &ExponentTuple, s: f64, t: f64) -> Result<[(f64, f64); 2]> {
    let lp = LiebParams::new(e)?;
    let (ip, iq, iu, iv) = (e.p.recip(), e.q.recip(), e.u.recip(), e.v.recip());
    let (u, v, r) = (e.u.value(), e.v.value(), e.r.value());
    let rc = e.r_conj();
    let first = (
        (s * ip * iv + t * iq * iu + lp.beta * lp.beta).powf(1.0 / rc),
        s.powf(ip * iv / rc) * t.powf(iq * iu / rc),
    );
    let (a2, g2) = (lp.alpha * lp.alpha, lp.gamma * lp.gamma);
    let second = (
        (g2 * s * ip * iv + a2 * t * iq * iu + s * t * ip * iq * iu * iv).powf(1.0 / r),
        (u * v * r).powf(-1.0 / r) * s.powf(u * g2 * ip + ip * iq) * t.powf(v * a2 * iq + ip * iq),
    );
    Ok([first, second])
}

fn jensen_report(e: &ExponentTuple, which: usize, name: &str) -> Result<CheckReport> {
    let [lhs, rhs] = {
        let (l, r) = jensen_sides(e, 1.0, 1.0)?[which];
        [l, r]
    };
    let mut strict = true;
    for (x, y) in lattice() {
        let (s, t) = (2f64.powf(x), 2f64.powf(y));
        let (l, r) = jensen_sides(e, s, t)?[which];
        // with q = ∞ some AM–GM weights vanish and equality is not isolated
        let off_argmax = (x != 0.0 || y != 0.0) && e.is_finite();
        if !(l >= r * (1.0 - ARITHMETIC_TOL)) || (off_argmax && !(l > r)) {
            strict = false;
        }
    }
    let report = CheckReport::identity(name, lhs, rhs, ARITHMETIC_TOL);
    let pass = report.pass && strict;
    Ok(report
        .with_pass(pass)
        .with_note("equality at S=T=1; lhs >= rhs (strict for finite tuples) on the 5x5 lattice S,T in 2^{-2..2}"))
}

/// Every closed-form identity attached to `e`.
///
/// Kernel rows (`α + γ = β`, the two normalization identities, the Hölder
/// perfect square and both AM–GM steps) need finite `u, v` and are omitted
/// at the endpoint `v = ∞`. The
/// hypercontractive rows use the pair `(min(p, q), r)`.
pub fn constants_identity_suite(e: &ExponentTuple) -> Vec<CheckReport> {
    let mut out = Vec::new();
    if let Err(err) = e.validate() {
        out.push(CheckReport::failure("constants", err.to_string()));
        return out;
    }
    let tag = |report: CheckReport| report.with_tuple(e);
    match LiebParams::new(e) {
        Ok(lp) => {
            out.push(tag(CheckReport::residual("alpha_plus_gamma", lp.sum_residual().abs(), ARITHMETIC_TOL)));
            out.push(tag(CheckReport::residual("j1", lp.j1_residual(e).abs(), ARITHMETIC_TOL)));
            out.push(tag(CheckReport::residual("j2", lp.j2_residual(e).abs(), ARITHMETIC_TOL)));
            out.push(tag(match holder_square_residual(e) {
                Ok(res) => CheckReport::residual("holder_square", res, ARITHMETIC_TOL),
                Err(err) => CheckReport::failure("holder_square", err.to_string()),
            }));
            for (which, name) in [(0, "jensen_r_conj"), (1, "jensen_r")] {
                out.push(tag(jensen_report(e, which, name).unwrap_or_else(|err| CheckReport::failure(name, err.to_string()))));
            }
        }
        Err(_) if e.v.is_infinite() || e.u.is_infinite() => {}
        Err(err) => out.push(tag(CheckReport::failure("kernel", err.to_string()))),
    }

    let p_low = e.p.value().min(e.q.value());
    let r = e.r.value();
    let nelson_note = format!("pair (p, r) = ({p_low}, {r})");
    out.push(tag(match nelson_constant(p_low, r) {
        Ok(c) => CheckReport::identity("nelson_constant", c, 1.0, ARITHMETIC_TOL).with_note(nelson_note.clone()),
        Err(err) => CheckReport::failure("nelson_constant", err.to_string()),
    }));
    out.push(tag(match nelson_square_residual(p_low, r) {
        Ok(res) => CheckReport::residual("nelson_square", res, ARITHMETIC_TOL).with_note(nelson_note),
        Err(err) => CheckReport::failure("nelson_square", err.to_string()),
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::{ExponentialSum, MultiIndex};
    use crate::ChaosExpansion;

    fn f(k: f64) -> Exponent {
        Exponent::Finite(k)
    }

    #[test]
    fn constants_fixture() {
        let one = ChaosExpansion::constant(1, Complex64::new(1.0, 0.0));
        let report = verify_conv_wick_identity(&one, &one, 2.0, 2.0, GridSpec::default_for(1)).unwrap();
        assert!(report.pass);
        assert!(report.residual.unwrap() <= 1e-8);
    }

    #[test]
    fn exponential_and_polynomial_fixtures() {
        let grid = GridSpec::default_for(1);
        let (e1, e2) = (ExponentialSum::real(&[0.5]), ExponentialSum::real(&[-0.3]));
        let report = verify_conv_wick_identity(&e1, &e2, 2.0, 2.0, grid).unwrap();
        assert!(report.residual.unwrap() <= 1e-6, "{report:?}");
        let he = |k| ChaosExpansion::monomial(MultiIndex::new(vec![k]));
        let report = verify_conv_wick_identity(&he(2), &he(1), 3.0, 1.5, grid).unwrap();
        assert!(report.residual.unwrap() <= 1e-6, "{report:?}");
    }

    #[test]
    fn identity_rejects_bad_inputs() {
        let one = ChaosExpansion::constant(1, Complex64::new(1.0, 0.0));
        let grid = GridSpec::default_for(1);
        assert!(verify_conv_wick_identity(&one, &one, 2.0, 3.0, grid).is_err());
        let coarse = GridSpec::new(1, 2.0, 0.1).unwrap();
        assert!(matches!(
            verify_conv_wick_identity(&one, &one, 2.0, 2.0, coarse),
            Err(WickError::BoundaryDecay { .. })
        ));
    }

    #[test]
    fn nelson_constant_is_one() {
        assert!((nelson_constant(2.0, 4.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((nelson_constant(1.5, 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((nelson_constant(2.0, 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(nelson_square_residual(2.0, 4.0).unwrap() < 1e-12);
        assert!(nelson_square_residual(3.0, 3.0).unwrap() < 1e-12);
    }

    #[test]
    fn suite_passes_on_examples() {
        let tuples = [
            ExponentTuple::holder(2.0, f(2.0)).unwrap(),
            ExponentTuple::full_holder(2.0, f(2.0), f(4.0)).unwrap(),
            ExponentTuple::full_holder(4.0, f(1.5), f(3.0)).unwrap(),
            ExponentTuple::nelson(2.0, 4.0).unwrap(),
            ExponentTuple::nelson(2.0, 2.0).unwrap(),
        ];
        for e in tuples {
            for report in constants_identity_suite(&e) {
                assert!(report.pass, "{report:?}");
            }
        }
    }

    #[test]
    fn jensen_equality_only_at_one() {
        let e = ExponentTuple::full_holder(2.0, f(2.0), f(4.0)).unwrap();
        for (l, r) in jensen_sides(&e, 1.0, 1.0).unwrap() {
            assert!((l - r).abs() < 1e-12);
        }
        for (l, r) in jensen_sides(&e, 1.3, 0.7).unwrap() {
            assert!(l > r);
        }
    }
}
