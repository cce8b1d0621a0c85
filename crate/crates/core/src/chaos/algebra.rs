use num_complex::Complex64;

use super::expansion::ChaosExpansion;
use super::exponential::ExponentialSum;
use crate::error::Result;

/// Operations the inequality checkers need from a random variable on `R^d`:
/// pointwise evaluation, Wick product, second quantization and expectation.
///
/// Implemented exactly by truncated chaos expansions and by finite sums of
/// exponential vectors.
pub trait WickAlgebra: Clone + Send + Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> Result<Complex64>;
    fn wick(&self, other: &Self) -> Result<Self>;
    fn second_quantization(&self, c: Complex64) -> Self;
    fn expectation(&self) -> Complex64;
    /// `(φ ⊗ ψ)(x, y) = φ(x) ψ(y)` on the concatenated coordinates.
    fn tensor(&self, other: &Self) -> Self;
}

impl WickAlgebra for ChaosExpansion {
    fn dim(&self) -> usize {
        ChaosExpansion::dim(self)
    }
    fn eval(&self, x: &[f64]) -> Result<Complex64> {
        ChaosExpansion::eval(self, x)
    }
    fn wick(&self, other: &Self) -> Result<Self> {
        ChaosExpansion::wick(self, other)
    }
    fn second_quantization(&self, c: Complex64) -> Self {
        ChaosExpansion::second_quantization(self, c)
    }
    fn expectation(&self) -> Complex64 {
        ChaosExpansion::expectation(self)
    }
    fn tensor(&self, other: &Self) -> Self {
        ChaosExpansion::tensor(self, other)
    }
}

impl WickAlgebra for ExponentialSum {
    fn dim(&self) -> usize {
        ExponentialSum::dim(self)
    }
    fn eval(&self, x: &[f64]) -> Result<Complex64> {
        ExponentialSum::eval(self, x)
    }
    fn wick(&self, other: &Self) -> Result<Self> {
        ExponentialSum::wick(self, other)
    }
    fn second_quantization(&self, c: Complex64) -> Self {
        ExponentialSum::second_quantization(self, c)
    }
    fn expectation(&self) -> Complex64 {
        ExponentialSum::expectation(self)
    }
    fn tensor(&self, other: &Self) -> Self {
        ExponentialSum::tensor(self, other)
    }
}
