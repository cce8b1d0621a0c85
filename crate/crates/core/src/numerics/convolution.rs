//! Convolution against the normalized Lebesgue measure `d_N x = (2π)^{−d/2} dx`.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::grid::GridFunction;
use super::norms::normalized_density;
use crate::error::{Result, WickError};

/// Integrand bound on the box faces accepted by [`convolve_normalized`].
pub const CONV_DECAY_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionMethod {
    /// Direct summation; the reference path.
    Direct,
    /// Zero-padded FFT; must agree with `Direct` to rounding.
    Fft,
}

impl ConvolutionMethod {
    /// Direct in one dimension, FFT in two (direct 2-D is `O(n⁴)`).
    pub fn default_for(dim: usize) -> Self {
        if dim == 1 {
            ConvolutionMethod::Direct
        } else {
            ConvolutionMethod::Fft
        }
    }
}

/// `(f ⋆ g)(x) = (2π)^{−d/2} ∫ f(x−y) g(y) dy` on the shared grid, with the
/// default method and [`CONV_DECAY_TOL`]. Samples of `f` outside the box are
/// taken as zero.
pub fn convolve_normalized(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    convolve_normalized_with(f, g, ConvolutionMethod::default_for(f.spec().dim), CONV_DECAY_TOL)
}

/// [`convolve_normalized`] with an explicit method and boundary tolerance.
///
/// The tolerance bounds the largest value `|f(x−y) g(y)|` can take with one
/// factor on a box face.
pub fn convolve_normalized_with(
    f: &GridFunction,
    g: &GridFunction,
    method: ConvolutionMethod,
    decay_tol: f64,
) -> Result<GridFunction> {
    if f.spec() != g.spec() {
        return Err(WickError::InvalidGrid("convolution operands must share a grid".into()));
    }
    let edge = (f.boundary_max() * g.max_abs()).max(f.max_abs() * g.boundary_max());
    if edge > decay_tol {
        return Err(WickError::BoundaryDecay {
            value: edge,
            tolerance: decay_tol,
        });
    }
    let spec = *f.spec();
    let scale = spec.step.powi(spec.dim as i32) * normalized_density(spec.dim);
    let raw = match method {
        ConvolutionMethod::Direct => direct(f, g),
        ConvolutionMethod::Fft => via_fft(f, g),
    };
    GridFunction::new(spec, raw.into_iter().map(|z| z * scale).collect())
}

fn direct(f: &GridFunction, g: &GridFunction) -> Vec<Complex64> {
    let spec = f.spec();
    let n = spec.nodes_per_axis();
    let half = spec.half_width();
    let fs = f.samples();
    let gs = g.samples();
    // index of x_i − y_j along one axis, if it stays on the grid
    let shift = |i: usize, j: usize| -> Option<usize> {
        let k = i + half;
        if k >= j && k - j < n {
            Some(k - j)
        } else {
            None
        }
    };
    match spec.dim {
        1 => (0..n)
            .into_par_iter()
            .map(|i| {
                let lo = i.saturating_sub(half);
                let hi = (i + half).min(n - 1);
                (lo..=hi).map(|j| fs[i + half - j] * gs[j]).sum()
            })
            .collect(),
        _ => (0..n * n)
            .into_par_iter()
            .map(|k| {
                let (i0, i1) = (k / n, k % n);
                let mut acc = Complex64::new(0.0, 0.0);
                for j0 in 0..n {
                    let Some(a) = shift(i0, j0) else { continue };
                    for j1 in 0..n {
                        if let Some(b) = shift(i1, j1) {
                            acc += fs[a * n + b] * gs[j0 * n + j1];
                        }
                    }
                }
                acc
            })
            .collect(),
    }
}

fn via_fft(f: &GridFunction, g: &GridFunction) -> Vec<Complex64> {
    let spec = f.spec();
    let dim = spec.dim;
    let n = spec.nodes_per_axis();
    let half = spec.half_width();
    let m = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(m);
    let inverse = planner.plan_fft_inverse(m);

    let pad = |src: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); m.pow(dim as u32)];
        for (k, z) in src.iter().enumerate() {
            let target = if dim == 1 { k } else { (k / n) * m + k % n };
            out[target] = *z;
        }
        out
    };
    let transform = |data: &mut [Complex64], fft: &dyn rustfft::Fft<f64>| {
        if dim == 1 {
            fft.process(data);
            return;
        }
        for row in data.chunks_mut(m) {
            fft.process(row);
        }
        let mut column = vec![Complex64::new(0.0, 0.0); m];
        for c in 0..m {
            for r in 0..m {
                column[r] = data[r * m + c];
            }
            fft.process(&mut column);
            for r in 0..m {
                data[r * m + c] = column[r];
            }
        }
    };

    let mut a = pad(f.samples());
    let mut b = pad(g.samples());
    transform(&mut a, forward.as_ref());
    transform(&mut b, forward.as_ref());
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    transform(&mut a, inverse.as_ref());
    let norm = 1.0 / (m.pow(dim as u32) as f64);

    (0..spec.len())
        .map(|k| {
            let full = if dim == 1 {
                k + half
            } else {
                (k / n + half) * m + (k % n + half)
            };
            a[full] * norm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::GridSpec;

    fn gaussian(spec: GridSpec, variance: f64) -> GridFunction {
        GridFunction::from_fn(spec, move |x| {
            let r2: f64 = x.iter().map(|t| t * t).sum();
            Complex64::new((-r2 / (2.0 * variance)).exp(), 0.0)
        })
        .unwrap()
    }

    /// `e^{−x²/(2a)} ⋆ e^{−x²/(2b)} = (ab/(a+b))^{d/2} e^{−x²/(2(a+b))}` under `d_N x`.
    fn analytic(x: &[f64], a: f64, b: f64) -> f64 {
        let r2: f64 = x.iter().map(|t| t * t).sum();
        (a * b / (a + b)).powf(x.len() as f64 / 2.0) * (-r2 / (2.0 * (a + b))).exp()
    }

    #[test]
    fn equal_widths() {
        let spec = GridSpec::default_for(1);
        let f = gaussian(spec, 2.0);
        let out = convolve_normalized(&f, &f).unwrap();
        for (k, z) in out.samples().iter().enumerate() {
            let x = spec.coord(k);
            if x.abs() <= 6.0 {
                // e^{−x²/4} ⋆ e^{−x²/4} = e^{−x²/8}
                assert!((z.re - (-x * x / 8.0).exp()).abs() < 1e-8, "x={x}");
            }
        }
    }

    #[test]
    fn variance_addition_and_symmetry() {
        let spec = GridSpec::default_for(1);
        let f = gaussian(spec, 0.7);
        let g = gaussian(spec, 1.8);
        let fg = convolve_normalized(&f, &g).unwrap();
        let gf = convolve_normalized(&g, &f).unwrap();
        assert!(fg.max_diff(&gf).unwrap() < 1e-12);
        for (k, z) in fg.samples().iter().enumerate() {
            assert!((z.re - analytic(&[spec.coord(k)], 0.7, 1.8)).abs() < 1e-8);
        }
    }

    #[test]
    fn fft_matches_direct() {
        let spec = GridSpec::new(1, 10.0, 0.05).unwrap();
        let f = GridFunction::from_fn(spec, |x| {
            Complex64::new((-x[0] * x[0] / 1.4).exp() * x[0].cos(), (-x[0] * x[0] / 3.0).exp())
        })
        .unwrap();
        let g = gaussian(spec, 1.1);
        let d = convolve_normalized_with(&f, &g, ConvolutionMethod::Direct, CONV_DECAY_TOL).unwrap();
        let t = convolve_normalized_with(&f, &g, ConvolutionMethod::Fft, CONV_DECAY_TOL).unwrap();
        assert!(d.max_diff(&t).unwrap() < 1e-10);
    }

    #[test]
    fn two_dimensional() {
        let spec = GridSpec::new(2, 8.0, 0.25).unwrap();
        let f = gaussian(spec, 0.5);
        let g = gaussian(spec, 0.8);
        let d = convolve_normalized_with(&f, &g, ConvolutionMethod::Direct, CONV_DECAY_TOL).unwrap();
        let t = convolve_normalized(&f, &g).unwrap();
        assert!(d.max_diff(&t).unwrap() < 1e-10);
        let mut x = [0.0; 2];
        for (k, z) in t.samples().iter().enumerate() {
            spec.point(k, &mut x);
            assert!((z.re - analytic(&x, 0.5, 0.8)).abs() < 1e-8);
        }
    }

    #[test]
    fn guards() {
        let a = gaussian(GridSpec::default_for(1), 1.0);
        let b = gaussian(GridSpec::new(1, 12.0, 0.02).unwrap(), 1.0);
        assert!(convolve_normalized(&a, &b).is_err());
        let wide = gaussian(GridSpec::new(1, 3.0, 0.01).unwrap(), 1.0);
        assert!(matches!(convolve_normalized(&wide, &wide), Err(WickError::BoundaryDecay { .. })));
    }
}
