use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::hermite::hermite_table;
use super::multi_index::MultiIndex;
use crate::error::{Result, WickError};

/// A truncated Hermite chaos expansion `φ = Σ_α c_α He_α` on `R^dim`.
///
/// Only indices with `|α| <= max_degree` and a nonzero coefficient are stored,
/// so the zero expansion is the empty map.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaosExpansion {
    dim: usize,
    max_degree: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl ChaosExpansion {
    pub fn zero(dim: usize, max_degree: u32) -> Self {
        assert!(dim > 0, "chaos expansions need at least one coordinate");
        ChaosExpansion {
            dim,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant random variable `c`.
    pub fn constant(dim: usize, c: Complex64) -> Self {
        let mut out = ChaosExpansion::zero(dim, 0);
        out.accumulate(MultiIndex::zero(dim), c);
        out
    }

    /// The basis element `He_α`.
    pub fn monomial(alpha: MultiIndex) -> Self {
        let dim = alpha.dim();
        let max_degree = alpha.total_degree();
        let mut out = ChaosExpansion::zero(dim, max_degree);
        out.accumulate(alpha, Complex64::new(1.0, 0.0));
        out
    }

    /// Builds an expansion from `(α, c_α)` pairs. Repeated indices are summed.
    pub fn from_entries<I>(dim: usize, max_degree: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        if dim == 0 {
            return Err(WickError::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut out = ChaosExpansion::zero(dim, max_degree);
        for (alpha, c) in entries {
            out.insert(alpha, c)?;
        }
        Ok(out)
    }

    /// Adds `c` to the coefficient at `alpha`.
    pub fn insert(&mut self, alpha: MultiIndex, c: Complex64) -> Result<()> {
        if alpha.dim() != self.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: alpha.dim(),
            });
        }
        if alpha.total_degree() > self.max_degree {
            return Err(WickError::DegreeOverflow {
                degrees: alpha.degrees().to_vec(),
                max_degree: self.max_degree,
            });
        }
        self.accumulate(alpha, c);
        Ok(())
    }

    fn accumulate(&mut self, alpha: MultiIndex, c: Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        match self.coeffs.entry(alpha) {
            Entry::Vacant(slot) => {
                if c != zero {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == zero {
                    slot.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(alpha)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    /// Highest total degree actually present.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(MultiIndex::total_degree).max().unwrap_or(0)
    }

    /// `E[φ]`, the coefficient of the constant term.
    pub fn expectation(&self) -> Complex64 {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    /// `‖φ‖_{L²(μ)} = sqrt(Σ |c_α|² α!)`.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(alpha, c)| c.norm_sqr() * alpha.factorial())
            .sum::<f64>()
            .sqrt()
    }

    /// Pointwise value `Σ_α c_α ∏_i He_{α_i}(x_i)`.
    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let width = self.degree() as usize + 1;
        let mut tables = vec![0.0; width * self.dim];
        for (axis, &xi) in x.iter().enumerate() {
            hermite_table(xi, &mut tables[axis * width..(axis + 1) * width]);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (alpha, c) in &self.coeffs {
            let basis: f64 = alpha
                .degrees()
                .iter()
                .enumerate()
                .map(|(axis, &k)| tables[axis * width + k as usize])
                .product();
            acc += c * basis;
        }
        Ok(acc)
    }

    /// Wick product: `He_α ⋄ He_β = He_{α+β}`, extended bilinearly.
    pub fn wick(&self, other: &ChaosExpansion) -> Result<ChaosExpansion> {
        self.check_dim(other)?;
        let mut out = ChaosExpansion::zero(self.dim, self.max_degree + other.max_degree);
        for (alpha, a) in &self.coeffs {
            for (beta, b) in &other.coeffs {
                out.accumulate(alpha.add(beta), a * b);
            }
        }
        Ok(out)
    }

    /// Second quantization `Γ(c)`: multiplies the degree-n chaos by `c^n`,
    /// with `0^0 = 1` so `Γ(0)` is the expectation.
    pub fn second_quantization(&self, c: Complex64) -> ChaosExpansion {
        let mut out = ChaosExpansion::zero(self.dim, self.max_degree);
        for (alpha, value) in &self.coeffs {
            let n = alpha.total_degree();
            let factor = if n == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                c.powu(n)
            };
            out.accumulate(alpha.clone(), value * factor);
        }
        out
    }

    /// S-transform in coordinates: `(Sφ)(ξ) = Σ_α c_α ξ^α`.
    pub fn s_transform(&self, xi: &[Complex64]) -> Result<Complex64> {
        if xi.len() != self.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: xi.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(alpha, c)| {
                let monomial: Complex64 = alpha
                    .degrees()
                    .iter()
                    .zip(xi)
                    .map(|(&k, z)| z.powu(k))
                    .product();
                c * monomial
            })
            .sum())
    }

    /// Tensor product over disjoint coordinates: `(φ ⊗ ψ)(x, y) = φ(x) ψ(y)`.
    pub fn tensor(&self, other: &ChaosExpansion) -> ChaosExpansion {
        let mut out = ChaosExpansion::zero(self.dim + other.dim, self.max_degree + other.max_degree);
        for (alpha, a) in &self.coeffs {
            for (beta, b) in &other.coeffs {
                out.accumulate(alpha.concat(beta), a * b);
            }
        }
        out
    }

    pub fn add(&self, other: &ChaosExpansion) -> Result<ChaosExpansion> {
        self.check_dim(other)?;
        let mut out = ChaosExpansion::zero(self.dim, self.max_degree.max(other.max_degree));
        for (alpha, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.accumulate(alpha.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> ChaosExpansion {
        let mut out = ChaosExpansion::zero(self.dim, self.max_degree);
        for (alpha, c) in &self.coeffs {
            out.accumulate(alpha.clone(), c * factor);
        }
        out
    }

    /// Projection onto the homogeneous chaos of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> ChaosExpansion {
        let mut out = ChaosExpansion::zero(self.dim, self.max_degree);
        for (alpha, c) in self.coeffs.iter().filter(|(a, _)| a.total_degree() == k) {
            out.accumulate(alpha.clone(), *c);
        }
        out
    }

    /// Largest coefficient-wise modulus difference against `other`.
    pub fn max_coeff_diff(&self, other: &ChaosExpansion) -> f64 {
        let mut worst: f64 = 0.0;
        for alpha in self.coeffs.keys().chain(other.coeffs.keys()) {
            worst = worst.max((self.coeff(alpha) - other.coeff(alpha)).norm());
        }
        worst
    }

    fn check_dim(&self, other: &ChaosExpansion) -> Result<()> {
        if self.dim != other.dim {
            return Err(WickError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn to_record(&self) -> ChaosRecord {
        ChaosRecord {
            dim: self.dim,
            max_degree: self.max_degree,
            entries: self
                .coeffs
                .iter()
                .map(|(alpha, c)| (alpha.degrees().to_vec(), c.re, c.im))
                .collect(),
        }
    }

    pub fn from_record(record: &ChaosRecord) -> Result<Self> {
        ChaosExpansion::from_entries(
            record.dim,
            record.max_degree,
            record
                .entries
                .iter()
                .map(|(degrees, re, im)| (MultiIndex::new(degrees.clone()), Complex64::new(*re, *im))),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("chaos records always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: ChaosRecord = serde_json::from_str(text)?;
        ChaosExpansion::from_record(&record)
    }
}

/// Text record for a [`ChaosExpansion`]: `{dim, max_degree, entries: [[degrees], re, im]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChaosRecord {
    pub dim: usize,
    pub max_degree: u32,
    pub entries: Vec<(Vec<u32>, f64, f64)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eval_basics() {
        let zero = ChaosExpansion::zero(1, 3);
        assert_eq!(zero.eval(&[1.7]).unwrap(), c(0.0));
        let he2 = ChaosExpansion::monomial(MultiIndex::new(vec![2]));
        assert_eq!(he2.eval(&[2.0]).unwrap(), c(3.0));
        assert!(matches!(
            he2.eval(&[1.0, 2.0]),
            Err(WickError::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn x_wick_x_is_he2() {
        let x = ChaosExpansion::monomial(MultiIndex::new(vec![1]));
        let xx = x.wick(&x).unwrap();
        assert_eq!(xx, ChaosExpansion::monomial(MultiIndex::new(vec![2])));
        // x ⋄ x = x² − 1
        assert!((xx.eval(&[1.5]).unwrap() - c(1.25)).norm() < 1e-15);
    }

    #[test]
    fn unit_and_second_quantization() {
        let phi = ChaosExpansion::from_entries(
            2,
            3,
            [
                (MultiIndex::new(vec![0, 0]), c(0.5)),
                (MultiIndex::new(vec![1, 2]), Complex64::new(1.0, -2.0)),
                (MultiIndex::new(vec![1, 0]), c(3.0)),
            ],
        )
        .unwrap();
        let one = ChaosExpansion::constant(2, c(1.0));
        assert_eq!(one.wick(&phi).unwrap().max_coeff_diff(&phi), 0.0);
        assert_eq!(phi.second_quantization(c(1.0)), phi);
        let projected = phi.second_quantization(c(0.0));
        assert_eq!(projected.len(), 1);
        assert_eq!(projected.expectation(), c(0.5));
        let halved = phi.second_quantization(c(0.5));
        assert_eq!(halved.coeff(&MultiIndex::new(vec![1, 2])), Complex64::new(0.125, -0.25));
    }

    #[test]
    fn degree_and_dimension_guards() {
        let mut phi = ChaosExpansion::zero(1, 2);
        assert!(phi.insert(MultiIndex::new(vec![3]), c(1.0)).is_err());
        assert!(phi.insert(MultiIndex::new(vec![1, 1]), c(1.0)).is_err());
        phi.insert(MultiIndex::new(vec![1]), c(1.0)).unwrap();
        phi.insert(MultiIndex::new(vec![1]), c(-1.0)).unwrap();
        assert!(phi.is_zero());
    }

    #[test]
    fn l2_norm_uses_factorials() {
        let phi = ChaosExpansion::from_entries(
            1,
            3,
            [(MultiIndex::new(vec![0]), c(1.0)), (MultiIndex::new(vec![3]), c(1.0))],
        )
        .unwrap();
        assert!((phi.l2_norm() - 7f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn record_round_trip() {
        let phi = ChaosExpansion::from_entries(
            2,
            4,
            [(MultiIndex::new(vec![2, 1]), Complex64::new(0.25, -1.5))],
        )
        .unwrap();
        let text = phi.to_json();
        assert_eq!(text, r#"{"dim":2,"max_degree":4,"entries":[[[2,1],0.25,-1.5]]}"#);
        assert_eq!(ChaosExpansion::from_json(&text).unwrap(), phi);
    }
}
