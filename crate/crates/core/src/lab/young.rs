//! Numeric check of the sharp Young inequality for the normalized convolution.

use num_complex::Complex64;

use super::exponents::sharp_young_constant;
use super::report::CheckReport;
use super::tolerances::YOUNG_SLACK;
use crate::error::Result;
use crate::exponent::Exponent;
use crate::numerics::{convolve_normalized, lp_norm_lebesgue, GridFunction, GridSpec};

/// `‖|f ⋆ g|‖_r <= C_{p,q,r;d} ‖|f|‖_p ‖|g|‖_q + slack` on a shared grid.
pub fn young_check(f: &GridFunction, g: &GridFunction, p: Exponent, q: Exponent, r: Exponent) -> Result<CheckReport> {
    let c = sharp_young_constant(p, q, r, f.spec().dim)?;
    let modulus = |h: &GridFunction| {
        GridFunction::new(*h.spec(), h.samples().iter().map(|z| Complex64::new(z.norm(), 0.0)).collect())
    };
    let (f, g) = (modulus(f)?, modulus(g)?);
    let lhs = lp_norm_lebesgue(&convolve_normalized(&f, &g)?, r)?;
    let rhs = c * lp_norm_lebesgue(&f, p)? * lp_norm_lebesgue(&g, q)?;
    let pass = lhs <= rhs + YOUNG_SLACK;
    Ok(CheckReport::inequality("young", lhs, rhs, 0.0)
        .with_pass(pass)
        .with_exponents(None, None, Some(p), Some(q), Some(r))
        .with_note(format!("C = {c:.9}; absolute slack {YOUNG_SLACK:e}")))
}

fn gaussian(spec: GridSpec, var: f64) -> Result<GridFunction> {
    GridFunction::from_fn(spec, |x| Complex64::new((-x.iter().map(|t| t * t).sum::<f64>() / (2.0 * var)).exp(), 0.0))
}

fn compact(spec: GridSpec, profile: fn(f64) -> f64) -> Result<GridFunction> {
    GridFunction::from_fn(spec, |x| Complex64::new(x.iter().map(|&t| profile(t)).product(), 0.0))
}

fn tent(t: f64) -> f64 {
    (1.0 - t.abs()).max(0.0)
}

fn unit_box(t: f64) -> f64 {
    if t.abs() <= 1.0 { 1.0 } else { 0.0 }
}

/// Exponent triples with `1/p + 1/q = 1/r + 1` used by [`young_suite`].
pub fn young_triples() -> Vec<(Exponent, Exponent, Exponent)> {
    let f = Exponent::Finite;
    vec![
        (f(4.0 / 3.0), f(4.0 / 3.0), f(2.0)),
        (f(1.5), f(2.0), f(6.0)),
        (f(1.0), f(2.0), f(2.0)),
        (f(2.0), f(2.0), Exponent::Infinite),
    ]
}

/// Gaussian (including the extremal widths `e^{−k'x²}` when `p, q > 1`) and
/// compactly supported fixtures for every triple in [`young_triples`].
pub fn young_suite(spec: GridSpec) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (p, q, r) in young_triples() {
        let mut pairs: Vec<(&str, Result<(GridFunction, GridFunction)>)> = vec![
            ("gaussian", gaussian(spec, 1.0).and_then(|f| Ok((f, gaussian(spec, 0.3)?)))),
            ("tent_box", compact(spec, tent).and_then(|f| Ok((f, compact(spec, unit_box)?)))),
            ("gaussian_box", gaussian(spec, 0.5).and_then(|f| Ok((f, compact(spec, unit_box)?)))),
        ];
        if let (Exponent::Finite(pv), Exponent::Finite(qv)) = (p, q) {
            if pv > 1.0 && qv > 1.0 {
                let (pc, qc) = (pv / (pv - 1.0), qv / (qv - 1.0));
                let extremal = gaussian(spec, 1.0 / (2.0 * pc)).and_then(|f| Ok((f, gaussian(spec, 1.0 / (2.0 * qc))?)));
                pairs.push(("gaussian_extremal", extremal));
            }
        }
        for (name, pair) in pairs {
            let check = format!("young_{name}");
            let report = pair
                .and_then(|(f, g)| young_check(&f, &g, p, q, r))
                .map(|rep| rep.renamed(check.clone()))
                .unwrap_or_else(|err| {
                    CheckReport::failure(&check, err.to_string()).with_exponents(None, None, Some(p), Some(q), Some(r))
                });
            out.push(report);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_extremals_are_tight() {
        let reports = young_suite(GridSpec::default_for(1));
        assert_eq!(reports.len(), 15);
        for report in &reports {
            assert!(report.pass, "{report:?}");
            if report.check == "young_gaussian_extremal" {
                assert!((report.ratio - 1.0).abs() < 1e-6, "{report:?}");
            }
        }
    }
}
