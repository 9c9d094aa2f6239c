//! Wigner eigenfunctions `f_mn` evaluated as functions on the plane.
//!
//! Each `f_mn` is a polynomial times `exp(-(x₀² + x₁²)/θ)`. The polynomial
//! is built from `f₀₀ = 2 exp(-r²/θ)` by star-multiplying with `z̄` on the
//! left and `z` on the right. For a linear function `ℓ` the star product is
//! exact at first order:
//! `ℓ ⋆ F = ℓF + (iθ/2)(∂₀ℓ ∂₁F − ∂₁ℓ ∂₀F)`, and likewise on the right.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use super::poly::Poly2;
use super::{MoyalElement, MoyalParams};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Polynomial prefactors of every `f_mn` with `m, n < N`.
#[derive(Debug, Clone)]
pub struct WignerBasis {
    params: MoyalParams,
    polys: Vec<Poly2>,
}

// ∂_μ (P e^{-r²/θ}) = (∂_μ P − 2 x_μ P / θ) e^{-r²/θ}
fn gaussian_derivative(p: &Poly2, axis: usize, theta: f64) -> Poly2 {
    let mut q = p.derivative(axis);
    let (a, b) = if axis == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
    let lin = p.mul_linear(Complex64::from(a), Complex64::from(b));
    q.axpy(Complex64::from(-2.0 / theta), &lin);
    q
}

// z̄ ⋆ F, with z̄ = (x₀ − i x₁)/√2
fn left_zbar(p: &Poly2, theta: f64) -> Poly2 {
    let q0 = gaussian_derivative(p, 0, theta);
    let q1 = gaussian_derivative(p, 1, theta);
    let mut out = p.mul_linear(Complex64::from(1.0 / SQRT_2), -I / SQRT_2);
    let c = I * (theta / (2.0 * SQRT_2));
    out.axpy(c, &q1);
    out.axpy(c * I, &q0);
    out
}

// F ⋆ z, with z = (x₀ + i x₁)/√2
fn right_z(p: &Poly2, theta: f64) -> Poly2 {
    let q0 = gaussian_derivative(p, 0, theta);
    let q1 = gaussian_derivative(p, 1, theta);
    let mut out = p.mul_linear(Complex64::from(1.0 / SQRT_2), I / SQRT_2);
    let c = I * (theta / (2.0 * SQRT_2));
    out.axpy(c * I, &q0);
    out.axpy(-c, &q1);
    out
}

impl WignerBasis {
    pub fn new(params: MoyalParams) -> Self {
        let n = params.truncation();
        let theta = params.theta();
        let max_degree = 2 * n;
        let mut polys = Vec::with_capacity(n * n);
        let mut column = Poly2::constant(Complex64::from(2.0), max_degree);
        for m in 0..n {
            if m > 0 {
                column = left_zbar(&column, theta).scaled(Complex64::from(1.0 / (theta * m as f64).sqrt()));
            }
            let mut p = column.clone();
            polys.push(p.clone());
            for k in 1..n {
                p = right_z(&p, theta).scaled(Complex64::from(1.0 / (theta * k as f64).sqrt()));
                polys.push(p.clone());
            }
        }
        Self { params, polys }
    }

    pub fn params(&self) -> MoyalParams {
        self.params
    }

    pub fn polynomial(&self, m: usize, n: usize) -> Result<&Poly2> {
        let size = self.params.truncation();
        if m >= size || n >= size {
            return Err(Error::IndexOutOfRange { m, n, truncation: size });
        }
        Ok(&self.polys[m * size + n])
    }

    /// `f_mn(x₀, x₁)`
    pub fn eval(&self, m: usize, n: usize, x0: f64, x1: f64) -> Result<Complex64> {
        let p = self.polynomial(m, n)?;
        let g = (-(x0 * x0 + x1 * x1) / self.params.theta()).exp();
        Ok(p.eval(x0, x1) * g)
    }

    /// The function `Σ a_mn f_mn` at a point.
    pub fn eval_element(&self, a: &MoyalElement, x0: f64, x1: f64) -> Result<Complex64> {
        if a.params() != self.params {
            return Err(Error::ParamsMismatch);
        }
        let size = self.params.truncation();
        let g = (-(x0 * x0 + x1 * x1) / self.params.theta()).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..size {
            for n in 0..size {
                let c = a.coeffs()[(m, n)];
                if c != Complex64::new(0.0, 0.0) {
                    acc += c * self.polys[m * size + n].eval(x0, x1);
                }
            }
        }
        Ok(acc * g)
    }
}

/// Evaluates `f_mn` at each point.
pub fn wigner_basis_eval(
    m: usize,
    n: usize,
    params: MoyalParams,
    points: &[(f64, f64)],
) -> Result<Vec<Complex64>> {
    let size = params.truncation();
    if m >= size || n >= size {
        return Err(Error::IndexOutOfRange { m, n, truncation: size });
    }
    if m == 0 && n == 0 {
        let theta = params.theta();
        return Ok(points
            .iter()
            .map(|&(x0, x1)| Complex64::from(2.0 * (-(x0 * x0 + x1 * x1) / theta).exp()))
            .collect());
    }
    // Only the indices up to (m, n) are needed.
    let reduced = MoyalParams::new(params.theta(), m.max(n) + 1)?;
    let basis = WignerBasis::new(reduced);
    points
        .iter()
        .map(|&(x0, x1)| basis.eval(m, n, x0, x1))
        .collect()
}
