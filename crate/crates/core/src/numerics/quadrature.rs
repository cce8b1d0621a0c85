//! Gauss–Hermite rules for the standard Gaussian weight `e^{−x²/2}/√(2π)`.

use std::fmt::Write as _;

use crate::error::{Result, WickError};

pub const MAX_ORDER: usize = 200;

/// Nodes and weights of an `order`-point rule; the weights sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Builds the `order`-point rule for the standard Gaussian.
///
/// Roots of the physicists' polynomial `H_n` are found by Newton iteration on
/// the orthonormal recurrence (asymptotic starting guesses), then mapped by
/// `x → √2 x`.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_ORDER {
        return Err(WickError::QuadratureOrder(order));
    }
    let n = order;
    let nf = n as f64;
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut roots = vec![0.0; n];
    let mut raw_weights = vec![0.0; n];
    let half = n.div_ceil(2);
    let mut z: f64 = 0.0;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-0.166_67),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * roots[0],
            3 => 1.91 * z - 0.91 * roots[1],
            _ => 2.0 * z - roots[i - 2],
        };
        let mut derivative = 0.0;
        let mut converged = false;
        for _ in 0..100 {
            let (p_n, p_nm1) = orthonormal_physicists(n, z, pim4);
            derivative = (2.0 * nf).sqrt() * p_nm1;
            let step = p_n / derivative;
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(WickError::QuadratureOrder(order));
        }
        // refresh the derivative at the converged root
        let (_, p_nm1) = orthonormal_physicists(n, z, pim4);
        derivative = if p_nm1 != 0.0 {
            (2.0 * nf).sqrt() * p_nm1
        } else {
            derivative
        };
        roots[i] = z;
        let w = 2.0 / (derivative * derivative);
        raw_weights[i] = w;
        roots[n - 1 - i] = -z;
        raw_weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        roots[n / 2] = 0.0;
    }
    let total: f64 = raw_weights.iter().sum();
    let mut pairs: Vec<(f64, f64)> = roots
        .iter()
        .zip(&raw_weights)
        .map(|(&z, &w)| (z * std::f64::consts::SQRT_2, w / total))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// Orthonormal physicists' Hermite functions `(p_n(z), p_{n−1}(z))` for weight `e^{−z²}`.
fn orthonormal_physicists(n: usize, z: f64, pim4: f64) -> (f64, f64) {
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `E[f(X)]` for a standard normal `X`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `E[f(X)]` for `X ~ N(0, I_dim)` by the tensor rule. Axis 0 varies slowest.
    pub fn integrate_tensor<F: FnMut(&[f64]) -> f64>(&self, dim: usize, mut f: F) -> f64 {
        let mut total = 0.0;
        self.for_each_node(dim, |x, w| total += w * f(x));
        total
    }

    /// Visits every tensor node with its product weight, in a fixed order.
    pub fn for_each_node<F: FnMut(&[f64], f64)>(&self, dim: usize, mut visit: F) {
        let n = self.order();
        let mut idx = vec![0usize; dim];
        let mut point = vec![0.0; dim];
        loop {
            let mut weight = 1.0;
            for (axis, &i) in idx.iter().enumerate() {
                point[axis] = self.nodes[i];
                weight *= self.weights[i];
            }
            visit(&point, weight);
            let mut axis = dim;
            loop {
                if axis == 0 {
                    return;
                }
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < n {
                    break;
                }
                idx[axis] = 0;
            }
        }
    }

    /// Audit table, one `node,weight` line per node.
    pub fn table(&self) -> String {
        let mut out = String::from("node,weight\n");
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let _ = writeln!(out, "{x:.17e},{w:.17e}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::{factorial, hermite_eval};

    #[test]
    fn small_rules() {
        let one = gauss_hermite_rule(1).unwrap();
        assert_eq!(one.nodes(), &[0.0]);
        assert!((one.weights()[0] - 1.0).abs() < 1e-15);

        // moments 1, 0, 1 force nodes ±1 with weights 1/2
        let two = gauss_hermite_rule(2).unwrap();
        assert!((two.nodes()[0] + 1.0).abs() < 1e-14 && (two.nodes()[1] - 1.0).abs() < 1e-14);
        assert!((two.weights()[0] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn order_bounds() {
        assert_eq!(gauss_hermite_rule(0), Err(WickError::QuadratureOrder(0)));
        assert_eq!(gauss_hermite_rule(201), Err(WickError::QuadratureOrder(201)));
        let big = gauss_hermite_rule(200).unwrap();
        assert!((big.weights().iter().sum::<f64>() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn moments() {
        for order in [5, 20, 64, 128] {
            let rule = gauss_hermite_rule(order).unwrap();
            assert!((rule.weights().iter().sum::<f64>() - 1.0).abs() < 1e-13);
            assert!(rule.integrate(|x| x).abs() < 1e-12);
            assert!(rule.integrate(|x| x.powi(3)).abs() < 1e-10);
            assert!((rule.integrate(|x| x * x) - 1.0).abs() < 1e-10);
            assert!((rule.integrate(|x| x.powi(4)) - 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn he5_norm() {
        let rule = gauss_hermite_rule(20).unwrap();
        let norm = rule.integrate(|x| hermite_eval(5, x).powi(2));
        assert!((norm - 120.0).abs() < 1e-9);
    }

    #[test]
    fn orthogonality() {
        let rule = gauss_hermite_rule(16).unwrap();
        for j in 0..16u32 {
            for k in 0..16u32 {
                let value = rule.integrate(|x| hermite_eval(j, x) * hermite_eval(k, x));
                let expected = if j == k { factorial(j) } else { 0.0 };
                // compared in the orthonormal scaling He_k / sqrt(k!)
                let scale = (factorial(j) * factorial(k)).sqrt();
                assert!(
                    (value - expected).abs() <= 1e-9 * scale,
                    "j={j} k={k}: {value} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn tensor_rule() {
        let rule = gauss_hermite_rule(8).unwrap();
        let v = rule.integrate_tensor(2, |x| x[0] * x[0] * x[1] * x[1] + x[0]);
        assert!((v - 1.0).abs() < 1e-12);
        assert!(rule.table().starts_with("node,weight\n"));
        assert_eq!(rule.table().lines().count(), 9);
    }
}
