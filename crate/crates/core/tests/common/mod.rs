#![allow(dead_code)]

use std::f64::consts::PI;

use ncc_core::moyal::{MoyalParams, WignerBasis};
use ncc_core::quadrature::GaussRule;
use ncc_core::Complex64;

/// Direct evaluation of the integral form of the star product,
/// `(f ⋆ g)(x) = (πθ)⁻² ∫ d²y d²z f(x+y) g(x+z) exp(−2i yᵀΘ⁻¹z)`,
/// with `Θ⁻¹ = θ⁻¹ [[0, −1], [1, 0]]`, for `f = f_mn`, `g = f_kl`.
///
/// Substituting `u = x + y`, `v = x + z` puts the Gaussian factors of both
/// basis functions on tensor Gauss–Hermite grids.
pub struct StarQuadrature {
    basis: WignerBasis,
    theta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl StarQuadrature {
    pub fn new(params: MoyalParams, points: usize) -> Self {
        let theta = params.theta();
        let rule = GaussRule::hermite(points);
        let s = theta.sqrt();
        Self {
            basis: WignerBasis::new(params),
            theta,
            nodes: rule.nodes.iter().map(|x| x * s).collect(),
            weights: rule.weights.iter().map(|w| w * s).collect(),
        }
    }

    fn weighted_poly(&self, m: usize, n: usize) -> Vec<Complex64> {
        let p = self.basis.polynomial(m, n).unwrap();
        let q = self.nodes.len();
        let mut out = Vec::with_capacity(q * q);
        for i in 0..q {
            for j in 0..q {
                out.push(p.eval(self.nodes[i], self.nodes[j]) * (self.weights[i] * self.weights[j]));
            }
        }
        out
    }

    /// `(f_mn ⋆ f_kl)(x)` at each point.
    pub fn star(&self, (m, n): (usize, usize), (k, l): (usize, usize), x: (f64, f64)) -> Complex64 {
        let f = self.weighted_poly(m, n);
        let g = self.weighted_poly(k, l);
        let q = self.nodes.len();
        let mut total = Complex64::new(0.0, 0.0);
        for (a, fa) in f.iter().enumerate() {
            let (u0, u1) = (self.nodes[a / q] - x.0, self.nodes[a % q] - x.1);
            let mut inner = Complex64::new(0.0, 0.0);
            for (b, gb) in g.iter().enumerate() {
                let (v0, v1) = (self.nodes[b / q] - x.0, self.nodes[b % q] - x.1);
                // yᵀΘ⁻¹z = (−y0 z1 + y1 z0)/θ
                let phase = -2.0 * (-u0 * v1 + u1 * v0) / self.theta;
                inner += gb * Complex64::from_polar(1.0, phase);
            }
            total += fa * inner;
        }
        total / (PI * self.theta).powi(2)
    }

    pub fn basis(&self) -> &WignerBasis {
        &self.basis
    }
}

/// `(1/πθ) ∫ h(x) exp(−|x − c|²/θ) d²x` on a Gauss–Hermite grid: the value a
/// coherent state centred at `c` assigns to a function `h`.
pub fn gaussian_average(
    theta: f64,
    center: (f64, f64),
    points: usize,
    mut h: impl FnMut(f64, f64) -> Complex64,
) -> Complex64 {
    let rule = GaussRule::hermite(points);
    let s = theta.sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for (xi, wi) in rule.nodes.iter().zip(&rule.weights) {
        for (xj, wj) in rule.nodes.iter().zip(&rule.weights) {
            acc += h(center.0 + s * xi, center.1 + s * xj) * (wi * wj);
        }
    }
    // the grid carries ∫ e^{-|y|²/θ} = πθ
    acc / PI
}
