//! The two-parameter Gaussian functional whose supremum fixes the constant of
//! the interpolated Hölder inequality, its closed-form maximum, and a
//! derivative-free search that recovers it numerically.

use super::exponents::{ExponentTuple, LiebParams};
use crate::error::{Result, WickError};
use crate::exponent::Exponent;

/// Finite exponents `(u, v, p, q, r)` and the kernel parameters.
struct Frozen {
    u: f64,
    v: f64,
    p: f64,
    q: f64,
    r: f64,
    r_conj: f64,
    params: LiebParams,
}

fn freeze(e: &ExponentTuple) -> Result<Frozen> {
    let finite = |k: Exponent| {
        k.finite()
            .ok_or_else(|| WickError::InvalidExponent("the Gaussian functional needs finite exponents".into()))
    };
    e.validate()?;
    Ok(Frozen {
        u: finite(e.u)?,
        v: finite(e.v)?,
        p: finite(e.p)?,
        q: finite(e.q)?,
        r: finite(e.r)?,
        r_conj: e.r_conj(),
        params: LiebParams::new(e)?,
    })
}

impl Frozen {
    fn log_prefactor(&self) -> f64 {
        self.p.ln() / self.p + self.q.ln() / self.q - self.r.ln() / self.r
    }

    /// `ln F` at `s = e^σ, t = e^τ`.
    fn log_objective(&self, sigma: f64, tau: f64) -> f64 {
        let LiebParams { alpha, beta, gamma } = self.params;
        let (s, t) = (sigma.exp(), tau.exp());
        let first = s + t + beta * beta;
        let second = gamma * gamma * s + alpha * alpha * t + s * t;
        self.log_prefactor() + sigma / self.p + tau / self.q
            - first.ln() / self.r_conj
            - second.ln() / self.r
    }
}

/// `F(s,t) = (p^{1/p} q^{1/q} / r^{1/r}) s^{1/p} t^{1/q}
///   / [(s + t + β²)^{1/r'} (γ² s + α² t + s t)^{1/r}]`.
///
/// `F(s,t)` is the square of the `L^r` norm produced by the kernel
/// `exp(−(q'x/v − r'y)²/(2p'q'r'))` on normalized Gaussian trials of widths
/// `s` and `t`.
pub fn lieb_objective(s: f64, t: f64, e: &ExponentTuple) -> Result<f64> {
    if !(s > 0.0 && t > 0.0) {
        return Err(WickError::InvalidExponent(format!("need s, t > 0, got ({s}, {t})")));
    }
    let frozen = freeze(e)?;
    Ok(frozen.log_objective(s.ln(), t.ln()).exp())
}

/// `sup F = v^{1/r − 1/p} u^{1/r − 1/q}`.
pub fn lieb_closed_form(e: &ExponentTuple) -> Result<f64> {
    let f = freeze(e)?;
    Ok(f.v.powf(1.0 / f.r - 1.0 / f.p) * f.u.powf(1.0 / f.r - 1.0 / f.q))
}

/// The unique maximizer `(s, t) = (1/(pv), 1/(qu))`.
pub fn lieb_argmax(e: &ExponentTuple) -> Result<(f64, f64)> {
    let f = freeze(e)?;
    Ok((1.0 / (f.p * f.v), 1.0 / (f.q * f.u)))
}

/// Result of [`lieb_sup_search`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiebSearch {
    pub s: f64,
    pub t: f64,
    pub value: f64,
    pub sweeps: usize,
}

const LOG_BRACKET: f64 = 40.0;
const STARTS: [(f64, f64); 4] = [(-3.0, -3.0), (-3.0, 3.0), (3.0, -3.0), (3.0, 3.0)];
const MAX_SWEEPS: usize = 500;
const GAIN_TOL: f64 = 1e-15;
const LINE_TOL: f64 = 1e-12;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    0.5 * (lo + hi)
}

/// Maximizes `f` along the line `x + λ d`, returning the new point.
fn line_max<F: Fn(f64, f64) -> f64>(f: &F, x: (f64, f64), d: (f64, f64)) -> (f64, f64) {
    let lambda = golden_max(|l| f(x.0 + l * d.0, x.1 + l * d.1), -LOG_BRACKET, LOG_BRACKET, LINE_TOL);
    let moved = (x.0 + lambda * d.0, x.1 + lambda * d.1);
    if f(moved.0, moved.1) >= f(x.0, x.1) { moved } else { x }
}

/// Maximizes [`lieb_objective`] over `(ln s, ln t)` by coordinate ascent with
/// golden-section line searches, from four spread starting points. Each sweep
/// ends with a search along the sweep's net displacement, which removes the
/// zig-zag of plain coordinate ascent on a tilted ridge.
///
/// `ln F` is strictly concave in these coordinates, so every start must land
/// on the same maximizer.
pub fn lieb_sup_search(e: &ExponentTuple) -> Result<LiebSearch> {
    let frozen = freeze(e)?;
    let f = |x: f64, y: f64| frozen.log_objective(x, y);
    let mut best: Option<LiebSearch> = None;
    for start in STARTS {
        let mut point = start;
        let mut value = f(point.0, point.1);
        let mut converged = None;
        for sweep in 1..=MAX_SWEEPS {
            let before = point;
            point = line_max(&f, point, (1.0, 0.0));
            point = line_max(&f, point, (0.0, 1.0));
            let d = (point.0 - before.0, point.1 - before.1);
            let len = d.0.hypot(d.1);
            if len > 0.0 {
                point = line_max(&f, point, (d.0 / len, d.1 / len));
            }
            let next = f(point.0, point.1);
            let gain = next - value;
            value = next;
            if gain <= GAIN_TOL {
                converged = Some(sweep);
                break;
            }
        }
        let sweeps = converged.ok_or(WickError::NoConvergence {
            iterations: MAX_SWEEPS,
        })?;
        let candidate = LiebSearch {
            s: point.0.exp(),
            t: point.1.exp(),
            value: value.exp(),
            sweeps,
        };
        if best.is_none_or(|b| candidate.value > b.value) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one start"))
}
