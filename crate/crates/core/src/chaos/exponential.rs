//! Renormalized exponential vectors `E_ξ(x) = exp(⟨ξ,x⟩ − ½⟨ξ,ξ⟩)` and their
//! finite linear combinations.
//!
//! The pairing `⟨ξ,η⟩ = Σ ξ_i η_i` is bilinear (no conjugation).

use num_complex::Complex64;

use super::expansion::ChaosExpansion;
use super::multi_index::MultiIndex;
use crate::error::{Result, WickError};

fn bilinear(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Degree-`max_degree` truncation of `E_ξ`: coefficient `ξ^α / α!` at `α`.
pub fn exponential_chaos(xi: &[Complex64], max_degree: u32) -> ChaosExpansion {
    let dim = xi.len();
    let entries = MultiIndex::up_to_degree(dim, max_degree).into_iter().map(|alpha| {
        let monomial: Complex64 = alpha
            .degrees()
            .iter()
            .zip(xi)
            .map(|(&k, z)| z.powu(k))
            .product();
        let c = monomial / alpha.factorial();
        (alpha, c)
    });
    ChaosExpansion::from_entries(dim, max_degree, entries).expect("indices generated within bounds")
}

/// L²(μ) norm of the discarded tail, `sqrt(Σ_{n>N} ⟨ξ,ξ̄⟩^n / n!)`.
pub fn exponential_tail_bound(xi: &[Complex64], max_degree: u32) -> f64 {
    let s: f64 = xi.iter().map(|z| z.norm_sqr()).sum();
    if s == 0.0 {
        return 0.0;
    }
    // term_n = s^n / n!, summed from n = N + 1 until negligible
    let mut term = 1.0;
    for n in 1..=max_degree + 1 {
        term *= s / f64::from(n);
    }
    let mut tail = 0.0;
    let mut n = max_degree + 1;
    loop {
        tail += term;
        n += 1;
        term *= s / f64::from(n);
        if term <= tail * 1e-17 || n > max_degree + 10_000 {
            break;
        }
    }
    tail.sqrt()
}

/// Closed form `exp(⟨ξ,x⟩ − ½⟨ξ,ξ⟩)`.
pub fn exponential_eval(xi: &[Complex64], x: &[f64]) -> Result<Complex64> {
    if xi.len() != x.len() {
        return Err(WickError::DimensionMismatch {
            expected: xi.len(),
            got: x.len(),
        });
    }
    let linear: Complex64 = xi.iter().zip(x).map(|(z, &t)| z * t).sum();
    Ok((linear - 0.5 * bilinear(xi, xi)).exp())
}

/// A finite linear combination `Σ c_i E_{ξ_i}`.
///
/// This class is closed under `Γ(c)` (`E_ξ ↦ E_{cξ}`) and under the Wick
/// product (`E_ξ ⋄ E_η = E_{ξ+η}`), so both act exactly here without any
/// truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    dim: usize,
    terms: Vec<(Complex64, Vec<Complex64>)>,
}

impl ExponentialSum {
    pub fn new(dim: usize) -> Self {
        ExponentialSum {
            dim,
            terms: Vec::new(),
        }
    }

    /// The single vector `E_ξ`.
    pub fn single(xi: Vec<Complex64>) -> Self {
        ExponentialSum {
            dim: xi.len(),
            terms: vec![(Complex64::new(1.0, 0.0), xi)],
        }
    }

    /// `E_ξ` for a real `ξ`.
    pub fn real(xi: &[f64]) -> Self {
        ExponentialSum::single(xi.iter().map(|&t| Complex64::new(t, 0.0)).collect())
    }

    pub fn push(&mut self, c: Complex64, xi: Vec<Complex64>) -> Result<()> {
        if xi.len() != self.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: xi.len(),
            });
        }
        self.terms.push((c, xi));
        Ok(())
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Complex64>)] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, xi) in &self.terms {
            acc += c * exponential_eval(xi, x)?;
        }
        Ok(acc)
    }

    pub fn wick(&self, other: &ExponentialSum) -> Result<ExponentialSum> {
        if self.dim != other.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = ExponentialSum::new(self.dim);
        for (a, xi) in &self.terms {
            for (b, eta) in &other.terms {
                let sum = xi.iter().zip(eta).map(|(x, y)| x + y).collect();
                out.terms.push((a * b, sum));
            }
        }
        Ok(out)
    }

    pub fn second_quantization(&self, c: Complex64) -> ExponentialSum {
        ExponentialSum {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(w, xi)| (*w, xi.iter().map(|z| c * z).collect()))
                .collect(),
        }
    }

    /// `E[Σ c_i E_{ξ_i}] = Σ c_i`.
    pub fn expectation(&self) -> Complex64 {
        self.terms.iter().map(|(c, _)| *c).sum()
    }

    /// `S(Σ c_i E_{ξ_i})(ζ) = Σ c_i e^{⟨ξ_i, ζ⟩}`.
    pub fn s_transform(&self, zeta: &[Complex64]) -> Result<Complex64> {
        if zeta.len() != self.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: zeta.len(),
            });
        }
        Ok(self.terms.iter().map(|(c, xi)| c * bilinear(xi, zeta).exp()).sum())
    }

    pub fn tensor(&self, other: &ExponentialSum) -> ExponentialSum {
        let mut out = ExponentialSum::new(self.dim + other.dim);
        for (a, xi) in &self.terms {
            for (b, eta) in &other.terms {
                let mut joined = xi.clone();
                joined.extend_from_slice(eta);
                out.terms.push((a * b, joined));
            }
        }
        out
    }

    /// Truncated chaos expansion of the whole combination.
    pub fn to_chaos(&self, max_degree: u32) -> ChaosExpansion {
        let mut out = ChaosExpansion::zero(self.dim, max_degree);
        for (c, xi) in &self.terms {
            out = out
                .add(&exponential_chaos(xi, max_degree).scale(*c))
                .expect("dimensions agree");
        }
        out
    }
}
