use std::fmt;

use super::hermite::factorial;

/// Exponent vector selecting the basis element `He_α(x) = ∏ He_{α_i}(x_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(degrees: Vec<u32>) -> Self {
        MultiIndex(degrees)
    }

    /// The all-zero index in `dim` coordinates.
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// `k · e_axis` in `dim` coordinates.
    pub fn axis(dim: usize, axis: usize, k: u32) -> Self {
        let mut degrees = vec![0; dim];
        degrees[axis] = k;
        MultiIndex(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `α! = ∏ α_i!`, the squared L²(μ) norm of `He_α`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    /// Entrywise sum; both indices must share a dimension.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Concatenation, used to build tensor products over disjoint coordinates.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut degrees = self.0.clone();
        degrees.extend_from_slice(&other.0);
        MultiIndex(degrees)
    }

    /// All indices in `dim` coordinates with total degree exactly `k`, in
    /// lexicographic order.
    pub fn with_total_degree(dim: usize, k: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0; dim];
        fill(&mut current, 0, k, &mut out);
        out.sort();
        out
    }

    /// All indices with total degree at most `max_degree`.
    pub fn up_to_degree(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = (0..=max_degree)
            .flat_map(|k| MultiIndex::with_total_degree(dim, k))
            .collect();
        out.sort();
        out
    }
}

fn fill(current: &mut Vec<u32>, axis: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let dim = current.len();
    if dim == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if axis == dim - 1 {
        current[axis] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for k in 0..=remaining {
        current[axis] = k;
        fill(current, axis + 1, remaining - k, out);
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(degrees: Vec<u32>) -> Self {
        MultiIndex(degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        // d = 2, N = 12 has C(14, 2) = 91 indices.
        assert_eq!(MultiIndex::up_to_degree(2, 12).len(), 91);
        assert_eq!(MultiIndex::with_total_degree(2, 4).len(), 5);
        assert_eq!(MultiIndex::with_total_degree(1, 3), vec![MultiIndex::new(vec![3])]);
        assert_eq!(MultiIndex::with_total_degree(0, 0).len(), 1);
    }

    #[test]
    fn factorial_and_degree() {
        let alpha = MultiIndex::new(vec![3, 2]);
        assert_eq!(alpha.total_degree(), 5);
        assert_eq!(alpha.factorial(), 12.0);
        assert_eq!(alpha.add(&MultiIndex::new(vec![1, 0])).degrees(), &[4, 2]);
        assert_eq!(alpha.to_string(), "(3,2)");
    }
}
