//! Gauss rules from the Golub–Welsch eigenvalue construction.

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of an `n`-point Gauss rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Gauss–Legendre on `[-1, 1]`.
    pub fn legendre(n: usize) -> Self {
        assert!(n >= 1, "quadrature needs at least one node");
        let beta = |k: usize| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        };
        golub_welsch(n, beta, 2.0)
    }

    /// Gauss–Hermite for the weight `exp(-x²)` on the real line.
    pub fn hermite(n: usize) -> Self {
        assert!(n >= 1, "quadrature needs at least one node");
        let beta = |k: usize| (k as f64 / 2.0).sqrt();
        golub_welsch(n, beta, std::f64::consts::PI.sqrt())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f` with a Legendre rule mapped onto `[a, b]`.
    pub fn integrate_interval(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * f(mid + half * s))
            .sum::<f64>()
            * half
    }
}

fn golub_welsch(n: usize, beta: impl Fn(usize) -> f64, moment0: f64) -> GaussRule {
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = beta(k);
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let v0 = eig.eigenvectors[(0, j)];
            (eig.eigenvalues[j], moment0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Symmetrize: both weight functions are even.
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (pairs[j].0 - pairs[i].0);
        let w = 0.5 * (pairs[i].1 + pairs[j].1);
        pairs[i] = (-x, w);
        pairs[j] = (x, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = GaussRule::legendre(8);
        // degree 15 is the exactness limit for 8 nodes
        let got = rule.integrate_interval(0.0, 2.0, |x| x.powi(15));
        assert!((got - 2f64.powi(16) / 16.0).abs() < 1e-9);
        let got = rule.integrate_interval(-1.0, 3.0, |x| 3.0 * x * x - x);
        assert!((got - (27.0 + 1.0 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn hermite_moments() {
        let rule = GaussRule::hermite(30);
        let m0: f64 = rule.weights.iter().sum();
        assert!((m0 - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        let m2: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x * x).sum();
        assert!((m2 - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
        // ∫ e^{-x²} cos(2x) = √π e^{-1}
        let c: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * (2.0 * x).cos()).sum();
        assert!((c - std::f64::consts::PI.sqrt() * (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn single_node_rules() {
        let l = GaussRule::legendre(1);
        assert_eq!(l.nodes, vec![0.0]);
        assert!((l.weights[0] - 2.0).abs() < 1e-15);
    }
}
