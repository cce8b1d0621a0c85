//! Run configuration, read from a single JSON document.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::fixtures::{MAX_DEGREE, MAX_DIM};
use crate::error::{Result, WickError};
use crate::exponent::Exponent;
use crate::lab::tolerances::{GRID_IDENTITY_TOL, INEQUALITY_SLACK};
use crate::numerics::{GridSpec, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Verify,
    Sweep,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = WickError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(WickError::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// Cartesian grid of `(u, p, q)`; `v = u'` and `r` follow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentGrid {
    pub u: Vec<f64>,
    pub p: Vec<Exponent>,
    pub q: Vec<Exponent>,
}

impl ExponentGrid {
    /// Points in `u`-major, then `p`, then `q` order.
    pub fn points(&self) -> Vec<(f64, Exponent, Exponent)> {
        let mut out = Vec::with_capacity(self.len());
        for &u in &self.u {
            for &p in &self.p {
                for &q in &self.q {
                    out.push((u, p, q));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.u.len() * self.p.len() * self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for ExponentGrid {
    fn default() -> Self {
        let f = Exponent::Finite;
        ExponentGrid {
            u: vec![4.0 / 3.0, 2.0, 4.0],
            p: vec![f(1.5), f(2.0), f(3.0), f(4.0)],
            q: vec![f(1.5), f(2.0), f(3.0), f(4.0)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Pointwise residual allowed in grid identities.
    pub identity: f64,
    /// Relative slack allowed in the norm inequalities.
    pub slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: GRID_IDENTITY_TOL,
            slack: INEQUALITY_SLACK,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Output {
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default)]
    pub exponents: ExponentGrid,
    /// Dimension of the random expansions in the ratio suites.
    pub dim: usize,
    /// Chaos degree of the random expansions.
    pub degree: u32,
    /// Gauss–Hermite nodes per axis.
    pub quadrature_order: usize,
    /// Grid for the convolution identity (one-dimensional).
    pub grid: GridSpec,
    pub seed: u64,
    /// Coefficient decay of the random expansions.
    pub decay: f64,
    /// Random pairs per exponent in the Hölder and hypercontractive suites.
    pub random_pairs: usize,
    /// Random pairs per tuple of the exponent grid.
    pub pairs_per_tuple: usize,
    /// Null trials for the minimality section.
    pub null_trials: usize,
    /// Worker threads; 0 lets the pool choose.
    #[serde(default)]
    pub threads: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: Output,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Verify,
            exponents: ExponentGrid::default(),
            dim: 1,
            degree: 6,
            quadrature_order: 64,
            grid: GridSpec::default_for(1),
            seed: 20_240_601,
            decay: 0.5,
            random_pairs: 200,
            pairs_per_tuple: 5,
            null_trials: 500,
            threads: 0,
            tolerances: Tolerances::default(),
            output: Output::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        RunConfig::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks the supported envelope: `d <= 2`, `N <= 16`, order `<= 200`.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(WickError::Config(msg));
        if !(1..=MAX_DIM).contains(&self.dim) {
            return fail(format!("dim {} outside 1..={MAX_DIM}", self.dim));
        }
        if self.degree > MAX_DEGREE {
            return fail(format!("degree {} exceeds {MAX_DEGREE}", self.degree));
        }
        if !(1..=MAX_ORDER).contains(&self.quadrature_order) {
            return fail(format!("quadrature order {} outside 1..={MAX_ORDER}", self.quadrature_order));
        }
        self.grid.validate()?;
        if self.grid.dim != 1 {
            return fail("the identity grid must be one-dimensional".into());
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return fail(format!("decay {} outside (0, 1)", self.decay));
        }
        if self.exponents.is_empty() {
            return fail("empty exponent grid".into());
        }
        let Tolerances { identity, slack } = self.tolerances;
        if !(identity >= 0.0 && slack >= 0.0) {
            return fail("tolerances must be non-negative".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, excluding the output section.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output = Output::default();
        let digest = Sha256::digest(serde_json::to_vec(&canonical).expect("config serializes"));
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_hash() {
        let config = RunConfig::default();
        let back = RunConfig::from_json(&config.to_json()).unwrap();
        assert_eq!(config, back);
        assert_eq!(config.hash(), back.hash());
        assert_eq!(config.hash().len(), 64);
        let mut other = config.clone();
        other.seed += 1;
        assert_ne!(config.hash(), other.hash());
    }

    #[test]
    fn infinite_q_column() {
        let text = RunConfig::default().to_json().replacen("\"q\": [", "\"q\": [\n\"inf\",", 1);
        let config = RunConfig::from_json(&text).unwrap();
        assert_eq!(config.exponents.q[0], Exponent::Infinite);
        assert_eq!(config.exponents.len(), 3 * 4 * 5);
    }

    #[test]
    fn envelope() {
        let mut config = RunConfig::default();
        config.dim = 3;
        assert!(config.validate().is_err());
        let mut config = RunConfig::default();
        config.degree = 17;
        assert!(config.validate().is_err());
        let mut config = RunConfig::default();
        config.quadrature_order = 201;
        assert!(config.validate().is_err());
        let partial = RunConfig::from_json("{\"mode\": \"sweep\", \"seed\": 7}").unwrap();
        assert_eq!(partial.seed, 7);
        assert_eq!(partial.degree, RunConfig::default().degree);
        assert!(RunConfig::from_json("{\"mode\": \"verify\", \"extra\": 1}").is_err());
    }
}
