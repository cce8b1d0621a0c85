use std::collections::BTreeMap;

use num_complex::Complex64;

use super::quadrature::QuadratureRule;
use crate::chaos::{hermite_table, MultiIndex};
use crate::error::{Result, WickError};

/// Coefficients of the projection of `f` onto the homogeneous chaos of degree
/// `k`: `c_α = E[f · He_α] / α!` for every `|α| = k`, by the tensor rule.
///
/// This is the defining projection of the Wick product computed by brute
/// force, and serves as the oracle for the coefficient rule.
pub fn chaos_projection<F>(
    f: F,
    dim: usize,
    k: u32,
    rule: &QuadratureRule,
) -> Result<BTreeMap<MultiIndex, Complex64>>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    let indices = MultiIndex::with_total_degree(dim, k);
    let width = k as usize + 1;
    let mut sums = vec![Complex64::new(0.0, 0.0); indices.len()];
    let mut tables = vec![0.0; width * dim];
    let mut failure = None;
    rule.for_each_node(dim, |x, w| {
        if failure.is_some() {
            return;
        }
        let value = match f(x) {
            Ok(v) if v.re.is_finite() && v.im.is_finite() => v,
            Ok(_) => {
                failure = Some(WickError::NonFinite(x.to_vec()));
                return;
            }
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        for (axis, &xi) in x.iter().enumerate() {
            hermite_table(xi, &mut tables[axis * width..(axis + 1) * width]);
        }
        for (slot, alpha) in sums.iter_mut().zip(&indices) {
            let basis: f64 = alpha
                .degrees()
                .iter()
                .enumerate()
                .map(|(axis, &d)| tables[axis * width + d as usize])
                .product();
            *slot += value * (w * basis);
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(indices
        .into_iter()
        .zip(sums)
        .map(|(alpha, s)| {
            let norm = alpha.factorial();
            (alpha, s / norm)
        })
        .collect())
}
