//! Product inputs in two dimensions reproduce the squares of one-dimensional
//! ratios and kernel values.

use rayon::prelude::*;

use super::exponents::{ExponentTuple, GaussianTrial};
use super::lieb::lieb_objective;
use super::ratios::full_holder_ratio;
use super::report::CheckReport;
use super::tolerances::TENSOR_TOL;
use crate::chaos::WickAlgebra;
use crate::error::{Result, WickError};
use crate::exponent::Exponent;
use crate::numerics::{normalized_density, GridFunction, GridSpec, QuadratureRule};

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Compares the full Hölder ratio of `φ1⊗φ1, ψ1⊗ψ1` with the square of the
/// ratio of `φ1, ψ1`, both by the same one-dimensional rule.
pub fn tensorization_check<T: WickAlgebra>(phi: &T, psi: &T, e: &ExponentTuple, rule: &QuadratureRule) -> Result<CheckReport> {
    if phi.dim() != 1 || psi.dim() != 1 {
        return Err(WickError::DimensionMismatch {
            expected: 1,
            got: phi.dim().max(psi.dim()),
        });
    }
    let one = full_holder_ratio(phi, psi, e, rule)?;
    let two = full_holder_ratio(&phi.tensor(phi), &psi.tensor(psi), e, rule)?;
    let squared = one.ratio * one.ratio;
    let gap = relative_gap(two.ratio, squared);
    let mut report = CheckReport::residual("tensor_ratio", gap, TENSOR_TOL).with_tuple(e);
    report.lhs = two.ratio;
    report.rhs = squared;
    report.ratio = two.ratio / squared;
    Ok(report.with_note(format!("ratio_1d = {:.12}", one.ratio)))
}

/// `J_d(x, y) = exp(−|q'x/v − r'y|²/(2p'q'r'))`.
fn kernel_coefficients(e: &ExponentTuple) -> Result<(f64, f64, f64)> {
    if !e.is_finite() {
        return Err(WickError::InvalidExponent("the kernel needs finite exponents".into()));
    }
    let (pc, qc, rc) = (e.p_conj(), e.q_conj(), e.r_conj());
    Ok((qc / e.v.value(), rc, 1.0 / (2.0 * pc * qc * rc)))
}

/// `{∫ [∫ |f(x−y)| |g(y)| J_d(x, y) d_N y]^r d_N x}^{1/r}` by the trapezoid
/// rule, with samples of `f` off the grid taken as zero.
pub fn kernel_norm(f: &GridFunction, g: &GridFunction, e: &ExponentTuple) -> Result<f64> {
    if f.spec() != g.spec() {
        return Err(WickError::InvalidGrid("kernel operands must share a grid".into()));
    }
    let (a, b, c) = kernel_coefficients(e)?;
    let r = e.r.value();
    let spec = *f.spec();
    let n = spec.nodes_per_axis();
    let half = spec.half_width() as isize;
    let dim = spec.dim;
    let density = normalized_density(dim);
    let fs: Vec<f64> = f.samples().iter().map(|z| z.norm()).collect();
    let gs: Vec<f64> = g.samples().iter().map(|z| z.norm()).collect();
    let shifted = |i: usize, j: usize| -> Option<usize> {
        let k = i as isize - j as isize + half;
        (0..n as isize).contains(&k).then_some(k as usize)
    };
    // J_d factors over coordinates, so one table of J_1 serves every axis
    let table: Vec<f64> = (0..n * n)
        .map(|ij| {
            let (x, y) = (spec.coord(ij / n), spec.coord(ij % n));
            (-c * (a * x - b * y).powi(2)).exp()
        })
        .collect();
    let wg: Vec<f64> = (0..spec.len()).map(|m| spec.trapezoid_weight(m) * gs[m]).collect();
    let inner = |k: usize| -> f64 {
        let acc: f64 = match dim {
            1 => (0..n)
                .filter_map(|j| shifted(k, j).map(|s| wg[j] * fs[s] * table[k * n + j]))
                .sum(),
            _ => {
                let (x0, x1) = (k / n, k % n);
                let mut acc = 0.0;
                for j0 in 0..n {
                    let Some(s0) = shifted(x0, j0) else { continue };
                    let k0 = table[x0 * n + j0];
                    let mut row = 0.0;
                    for j1 in 0..n {
                        if let Some(s1) = shifted(x1, j1) {
                            row += wg[j0 * n + j1] * fs[s0 * n + s1] * table[x1 * n + j1];
                        }
                    }
                    acc += k0 * row;
                }
                acc
            }
        };
        density * acc
    };
    let outer: f64 = (0..spec.len())
        .into_par_iter()
        .map(|k| spec.trapezoid_weight(k) * inner(k).powf(r))
        .collect::<Vec<_>>()
        .iter()
        .sum();
    Ok((density * outer).powf(1.0 / r))
}

/// Coarse grid on which the Gaussian kernel integrals are resolved to
/// rounding by the trapezoid rule.
pub fn kernel_grid(dim: usize) -> GridSpec {
    GridSpec { dim, extent: 20.0, step: 0.4 }
}

/// Normalized Gaussian trials of widths `(s, t)` with `‖|f|‖_p = ‖|g|‖_q = 1`,
/// extended to `dim` dimensions as products.
pub fn trial_pair(e: &ExponentTuple, s: f64, t: f64, spec: GridSpec) -> Result<(GridFunction, GridFunction)> {
    let (p, q) = match (e.p, e.q) {
        (Exponent::Finite(p), Exponent::Finite(q)) => (p, q),
        _ => return Err(WickError::InvalidExponent("trials need finite p, q".into())),
    };
    let (tf, tg) = (GaussianTrial::new(s, p)?, GaussianTrial::new(t, q)?);
    let product = |trial: GaussianTrial| {
        GridFunction::from_fn(spec, move |x| x.iter().map(|&xi| trial.eval(xi)).product::<f64>().into())
    };
    Ok((product(tf)?, product(tg)?))
}

/// At `(s, t)`: the 1-D kernel value against `√F(s,t)`, and the 2-D value
/// against the square of the 1-D value.
pub fn kernel_tensorization_check(e: &ExponentTuple, s: f64, t: f64) -> Result<Vec<CheckReport>> {
    let (f1, g1) = trial_pair(e, s, t, kernel_grid(1))?;
    let (f2, g2) = trial_pair(e, s, t, kernel_grid(2))?;
    let one = kernel_norm(&f1, &g1, e)?;
    let two = kernel_norm(&f2, &g2, e)?;
    let closed = lieb_objective(s, t, e)?.sqrt();
    let note = format!("s = {s:.6}, t = {t:.6}; grid L=20 h=0.4");
    let mut against_closed = CheckReport::residual("kernel_closed_form", relative_gap(one, closed), TENSOR_TOL)
        .with_tuple(e)
        .with_note(note.clone());
    against_closed.lhs = one;
    against_closed.rhs = closed;
    against_closed.ratio = one / closed;
    let mut squared = CheckReport::residual("tensor_kernel", relative_gap(two, one * one), TENSOR_TOL)
        .with_tuple(e)
        .with_note(note);
    squared.lhs = two;
    squared.rhs = one * one;
    squared.ratio = two / (one * one);
    Ok(vec![against_closed, squared])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::ExponentialSum;
    use crate::lab::{lieb_argmax, sharpness_witness};
    use crate::numerics::gauss_hermite_rule;
    use crate::ChaosExpansion;
    use num_complex::Complex64;

    fn f(k: f64) -> Exponent {
        Exponent::Finite(k)
    }

    #[test]
    fn constants_tensorize_exactly() {
        let rule = gauss_hermite_rule(32).unwrap();
        let one = ChaosExpansion::constant(1, Complex64::new(1.0, 0.0));
        let e = ExponentTuple::full_holder(2.0, f(2.0), f(4.0)).unwrap();
        let report = tensorization_check(&one, &one, &e, &rule).unwrap();
        assert!(report.pass && (report.lhs - 1.0).abs() < 1e-12, "{report:?}");
    }

    #[test]
    fn witnesses_tensorize() {
        let rule = gauss_hermite_rule(64).unwrap();
        let e = ExponentTuple::full_holder(2.0, f(2.0), f(4.0)).unwrap();
        let (xi, eta) = sharpness_witness(&e, 1).unwrap();
        let report = tensorization_check(&ExponentialSum::real(&xi), &ExponentialSum::real(&eta), &e, &rule).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn kernel_at_argmax() {
        let e = ExponentTuple::full_holder(2.0, f(2.0), f(4.0)).unwrap();
        let (s, t) = lieb_argmax(&e).unwrap();
        for report in kernel_tensorization_check(&e, s, t).unwrap() {
            assert!(report.pass, "{report:?}");
        }
    }
}
