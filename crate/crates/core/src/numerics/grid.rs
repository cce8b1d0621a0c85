use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WickError};

/// A uniform grid on the box `[−L, L]^dim` with spacing `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dim: usize,
    pub extent: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(dim: usize, extent: f64, step: f64) -> Result<Self> {
        let spec = GridSpec { dim, extent, step };
        spec.validate()?;
        Ok(spec)
    }

    /// Default reference grid: `L = 12, h = 0.01` in one dimension,
    /// `L = 8, h = 0.05` in two.
    pub fn default_for(dim: usize) -> Self {
        match dim {
            1 => GridSpec { dim: 1, extent: 12.0, step: 0.01 },
            _ => GridSpec { dim: 2, extent: 8.0, step: 0.05 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.dim) {
            return Err(WickError::InvalidGrid(format!(
                "dimension {} unsupported (1 or 2)",
                self.dim
            )));
        }
        if !(self.extent > 0.0 && self.step > 0.0 && self.extent.is_finite()) {
            return Err(WickError::InvalidGrid("extent and step must be positive".into()));
        }
        let ratio = self.extent / self.step;
        if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) || ratio.round() < 1.0 {
            return Err(WickError::InvalidGrid(format!(
                "L/h = {ratio} is not a positive integer"
            )));
        }
        Ok(())
    }

    /// `L / h`.
    pub fn half_width(&self) -> usize {
        (self.extent / self.step).round() as usize
    }

    /// `2L/h + 1`.
    pub fn nodes_per_axis(&self) -> usize {
        2 * self.half_width() + 1
    }

    pub fn len(&self) -> usize {
        self.nodes_per_axis().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate of node `i` along an axis; symmetric about zero.
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - self.half_width() as f64) * self.step
    }

    /// Multi-index of flat sample `k` (axis 0 slowest).
    pub fn unflatten(&self, mut k: usize, out: &mut [usize]) {
        let n = self.nodes_per_axis();
        for axis in (0..self.dim).rev() {
            out[axis] = k % n;
            k /= n;
        }
    }

    pub fn point(&self, k: usize, out: &mut [f64]) {
        let mut idx = [0usize; 2];
        self.unflatten(k, &mut idx[..self.dim]);
        for axis in 0..self.dim {
            out[axis] = self.coord(idx[axis]);
        }
    }

    pub fn on_boundary(&self, k: usize) -> bool {
        let n = self.nodes_per_axis();
        let mut idx = [0usize; 2];
        self.unflatten(k, &mut idx[..self.dim]);
        idx[..self.dim].iter().any(|&i| i == 0 || i == n - 1)
    }

    /// Trapezoid weight of node `k` (halved once per axis on which it sits at an end).
    pub fn trapezoid_weight(&self, k: usize) -> f64 {
        let n = self.nodes_per_axis();
        let mut idx = [0usize; 2];
        self.unflatten(k, &mut idx[..self.dim]);
        idx[..self.dim]
            .iter()
            .map(|&i| if i == 0 || i == n - 1 { 0.5 } else { 1.0 })
            .product::<f64>()
            * self.step.powi(self.dim as i32)
    }
}

/// Complex samples of a function at every node of a [`GridSpec`], row-major
/// with axis 0 slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    samples: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(spec: GridSpec, samples: Vec<Complex64>) -> Result<Self> {
        spec.validate()?;
        if samples.len() != spec.len() {
            return Err(WickError::InvalidGrid(format!(
                "{} samples for a grid of {} nodes",
                samples.len(),
                spec.len()
            )));
        }
        Ok(GridFunction { spec, samples })
    }

    pub fn from_fn<F>(spec: GridSpec, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Complex64,
    {
        GridFunction::try_from_fn(spec, |x| Ok(f(x)))
    }

    pub fn try_from_fn<F>(spec: GridSpec, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Result<Complex64>,
    {
        spec.validate()?;
        let mut point = [0.0; 2];
        let samples = (0..spec.len())
            .map(|k| {
                spec.point(k, &mut point[..spec.dim]);
                f(&point[..spec.dim])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GridFunction { spec, samples })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest modulus on the faces of the box.
    pub fn boundary_max(&self) -> f64 {
        self.samples
            .iter()
            .enumerate()
            .filter(|(k, _)| self.spec.on_boundary(*k))
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest pointwise modulus difference on a shared grid.
    pub fn max_diff(&self, other: &GridFunction) -> Result<f64> {
        if self.spec != other.spec {
            return Err(WickError::InvalidGrid("grid specs differ".into()));
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn to_record(&self) -> GridRecord {
        GridRecord {
            dim: self.spec.dim,
            extent: self.spec.extent,
            step: self.spec.step,
            samples: self.samples.iter().map(|z| (z.re, z.im)).collect(),
        }
    }

    pub fn from_record(record: &GridRecord) -> Result<Self> {
        GridFunction::new(
            GridSpec::new(record.dim, record.extent, record.step)?,
            record.samples.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("grid records always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: GridRecord = serde_json::from_str(text)?;
        GridFunction::from_record(&record)
    }
}

/// Text record for a [`GridFunction`]: `{dim, extent, step, samples: [[re, im]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub dim: usize,
    pub extent: f64,
    pub step: f64,
    pub samples: Vec<(f64, f64)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GridSpec::new(1, 12.0, 0.01).is_ok());
        assert!(GridSpec::new(1, 1.0, 0.3).is_err());
        assert!(GridSpec::new(3, 1.0, 0.5).is_err());
        assert!(GridSpec::new(1, -1.0, 0.5).is_err());
        let spec = GridSpec::new(1, 12.0, 0.01).unwrap();
        assert_eq!(spec.nodes_per_axis(), 2401);
        assert_eq!(spec.coord(1200), 0.0);
        assert_eq!(spec.coord(0), -12.0);
    }

    #[test]
    fn layout_and_records() {
        let spec = GridSpec::new(2, 1.0, 0.5).unwrap();
        assert_eq!(spec.len(), 25);
        let f = GridFunction::from_fn(spec, |x| Complex64::new(x[0], x[1])).unwrap();
        // axis 0 slowest: sample 1 is (−1, −0.5)
        assert_eq!(f.samples()[1], Complex64::new(-1.0, -0.5));
        assert_eq!(f.boundary_max(), 2f64.sqrt());
        let back = GridFunction::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert!(GridFunction::new(spec, vec![Complex64::new(0.0, 0.0); 3]).is_err());
    }
}
