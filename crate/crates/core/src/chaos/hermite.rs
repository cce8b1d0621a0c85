//! Probabilists' Hermite polynomials, the orthogonal basis of the Gaussian chaos.

/// Evaluates `He_n(x)` by the three-term recurrence
/// `He_{k+1}(x) = x He_k(x) - k He_{k-1}(x)`.
pub fn hermite_eval(n: u32, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for k in 1..n {
                let next = x * cur - f64::from(k) * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Fills `out[k] = He_k(x)` for `k = 0..out.len()`.
pub fn hermite_table(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = x;
    }
    for k in 2..out.len() {
        out[k] = x * out[k - 1] - (k - 1) as f64 * out[k - 2];
    }
}

/// `n!` as a float. Exact up to `n = 22`.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(hermite_eval(0, 3.7), 1.0);
        assert_eq!(hermite_eval(2, 2.0), 3.0);
        // He_3(x) = x^3 - 3x
        assert_eq!(hermite_eval(3, 2.0), 2.0);
        assert_eq!(hermite_eval(4, 1.5), 1.5f64.powi(4) - 6.0 * 1.5 * 1.5 + 3.0);
    }

    #[test]
    fn table_matches_pointwise() {
        let mut table = [0.0; 9];
        hermite_table(-1.3, &mut table);
        for (n, value) in table.iter().enumerate() {
            assert!((value - hermite_eval(n as u32, -1.3)).abs() < 1e-12);
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
    }
}
