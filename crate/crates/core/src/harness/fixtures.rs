//! Seeded random expansions and the named fixtures used by the verify run.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chaos::{ChaosExpansion, ExponentialSum, MultiIndex};
use crate::error::{Result, WickError};

/// Largest dimension, chaos degree and quadrature order a run accepts.
pub const MAX_DIM: usize = 2;
pub const MAX_DEGREE: u32 = 16;

/// Random expansion of degree `N` in `d` coordinates.
///
/// Real and imaginary parts of each `c_α` are uniform on `[−1, 1]` from
/// ChaCha8 seeded by `seed`, then scaled by `decay^{|α|}/√α!` so that the
/// `L²` norm stays of order one. Indices are visited in the sorted order of
/// [`MultiIndex::up_to_degree`], so the result depends only on the inputs.
pub fn random_chaos(seed: u64, dim: usize, degree: u32, decay: f64) -> Result<ChaosExpansion> {
    if !(1..=MAX_DIM).contains(&dim) {
        return Err(WickError::Config(format!("dimension {dim} outside 1..={MAX_DIM}")));
    }
    if degree > MAX_DEGREE {
        return Err(WickError::DegreeOverflow {
            degrees: vec![degree],
            max_degree: MAX_DEGREE,
        });
    }
    if !(decay > 0.0 && decay < 1.0) {
        return Err(WickError::Config(format!("decay {decay} outside (0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<(MultiIndex, Complex64)> = MultiIndex::up_to_degree(dim, degree)
        .into_iter()
        .map(|alpha| {
            let re: f64 = rng.random_range(-1.0..=1.0);
            let im: f64 = rng.random_range(-1.0..=1.0);
            let scale = decay.powi(alpha.total_degree() as i32) / alpha.factorial().sqrt();
            (alpha, Complex64::new(re, im) * scale)
        })
        .collect();
    ChaosExpansion::from_entries(dim, degree, entries)
}

/// Seed of the `index`-th fixture of a section, so fixtures can be built in
/// any order or in parallel.
pub fn fixture_seed(seed: u64, section: u64, index: u64) -> u64 {
    seed ^ section.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03)
}

/// A pair `(φ, ψ)` in either exact representation.
#[derive(Debug, Clone)]
pub enum FixturePair {
    Chaos(ChaosExpansion, ChaosExpansion),
    Exponential(ExponentialSum, ExponentialSum),
}

fn he(k: u32) -> ChaosExpansion {
    ChaosExpansion::monomial(MultiIndex::new(vec![k]))
}

fn poly(coeffs: &[f64]) -> ChaosExpansion {
    let degree = coeffs.len().saturating_sub(1) as u32;
    let entries = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| (MultiIndex::new(vec![k as u32]), Complex64::new(c, 0.0)));
    ChaosExpansion::from_entries(1, degree, entries).expect("one-dimensional entries")
}

fn exp_c(re: f64, im: f64) -> ExponentialSum {
    ExponentialSum::single(vec![Complex64::new(re, im)])
}

/// The ten one-dimensional pairs for the convolution–Wick identity:
/// constants, exponential vectors with `|ξ| <= 1`, and polynomials up to
/// degree 4.
pub fn conv_wick_fixtures() -> Vec<(&'static str, FixturePair)> {
    let one = ChaosExpansion::constant(1, Complex64::new(1.0, 0.0));
    let mut mixture = ExponentialSum::real(&[0.5]);
    mixture
        .push(Complex64::new(0.5, 0.0), vec![Complex64::new(-1.0, 0.0)])
        .expect("one-dimensional");
    vec![
        ("constants", FixturePair::Chaos(one.clone(), one.clone())),
        ("exp_0.5_-0.3", FixturePair::Exponential(ExponentialSum::real(&[0.5]), ExponentialSum::real(&[-0.3]))),
        ("exp_1_0.5", FixturePair::Exponential(ExponentialSum::real(&[1.0]), ExponentialSum::real(&[0.5]))),
        ("exp_-0.8_0.4", FixturePair::Exponential(ExponentialSum::real(&[-0.8]), ExponentialSum::real(&[0.4]))),
        ("exp_complex", FixturePair::Exponential(exp_c(0.6, 0.6), exp_c(0.0, -0.3))),
        ("exp_mixture", FixturePair::Exponential(mixture, ExponentialSum::real(&[0.2]))),
        ("he2_he1", FixturePair::Chaos(he(2), he(1))),
        ("he4_he1", FixturePair::Chaos(he(4), he(1))),
        ("he3_mix", FixturePair::Chaos(poly(&[0.0, 0.5, 0.0, 1.0]), poly(&[1.0, -1.0]))),
        ("taylor4", FixturePair::Chaos(poly(&[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0]), poly(&[0.5, 1.0]))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let a = random_chaos(42, 1, 6, 0.5).unwrap();
        let b = random_chaos(42, 1, 6, 0.5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_chaos(43, 1, 6, 0.5).unwrap());
        let norm = a.l2_norm();
        assert!((0.1..=10.0).contains(&norm), "{norm}");
        assert_eq!(random_chaos(7, 2, 4, 0.5).unwrap().len(), 15);
    }

    #[test]
    fn small_decay_concentrates_at_degree_zero() {
        let a = random_chaos(1, 2, 6, 1e-9).unwrap();
        let constant = a.expectation().norm();
        let rest = a.homogeneous_part(0).add(&a.scale(Complex64::new(-1.0, 0.0))).unwrap().l2_norm();
        assert!(rest < 1e-8 * constant.max(1e-3));
    }

    #[test]
    fn envelope() {
        assert!(random_chaos(1, 3, 2, 0.5).is_err());
        assert!(random_chaos(1, 1, 17, 0.5).is_err());
        assert!(random_chaos(1, 1, 2, 1.5).is_err());
    }

    #[test]
    fn ten_identity_fixtures() {
        assert_eq!(conv_wick_fixtures().len(), 10);
        assert_ne!(fixture_seed(1, 2, 3), fixture_seed(1, 2, 4));
    }
}
