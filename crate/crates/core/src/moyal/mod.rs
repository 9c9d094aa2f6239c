//! The Moyal plane `ℝ^{1,1}` with `[x⁰, x¹] = iθ`, in the Wigner matrix basis.
//!
//! An element `a = Σ a_mn f_mn` is stored by its coefficient matrix cut off at
//! `N × N`. Because `f_mn ⋆ f_kl = δ_nk f_ml`, the star product is the matrix
//! product of coefficients. Vector states act as
//! `ω_ψ(a) = 2πθ Σ ψ̄_m a_mn ψ_n` with `2πθ Σ |ψ_m|² = 1`.
//!
//! The complex coordinate `z = (x⁰ + i x¹)/√2` is `√θ` times the
//! annihilation operator: `Z_{n,n+1} = √(θ(n+1))`, so `Z Z̄ − Z̄ Z = θ` away
//! from the last index.

mod causal;
pub mod poly;
mod states;
mod wigner;

use std::f64::consts::{PI, SQRT_2};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use causal::{
    coherent_causal, generalized_coherent_causal, level_jump_bound, ChainMove, ChainOutcome,
    ChainSearch, GeneralizedCoherentState,
};
pub use states::{coherent_state, number_state, translate, TRANSLATION_LEAKAGE_LIMIT};
pub use wigner::{wigner_basis_eval, WignerBasis};

/// Allowed deviation of `2πθ‖ψ‖²` from 1.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRaw")]
pub struct MoyalParams {
    theta: f64,
    truncation: usize,
}

#[derive(Deserialize)]
struct ParamsRaw {
    theta: f64,
    truncation: usize,
}

impl TryFrom<ParamsRaw> for MoyalParams {
    type Error = Error;

    fn try_from(raw: ParamsRaw) -> Result<Self> {
        MoyalParams::new(raw.theta, raw.truncation)
    }
}

impl MoyalParams {
    pub fn new(theta: f64, truncation: usize) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidArgument(format!("θ must be positive, got {theta}")));
        }
        if truncation == 0 {
            return Err(Error::InvalidArgument("truncation must be at least 1".into()));
        }
        Ok(Self { theta, truncation })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `2πθ`, the weight of each basis function under integration.
    pub fn state_weight(&self) -> f64 {
        2.0 * PI * self.theta
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoyalElement {
    coeffs: DMatrix<Complex64>,
    params: MoyalParams,
}

impl MoyalElement {
    pub fn from_matrix(coeffs: DMatrix<Complex64>, params: MoyalParams) -> Result<Self> {
        let n = params.truncation;
        if coeffs.nrows() != n || coeffs.ncols() != n {
            return Err(Error::InvalidArgument(format!(
                "coefficient matrix is {}x{}, expected {n}x{n}",
                coeffs.nrows(),
                coeffs.ncols()
            )));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("MoyalElement"));
        }
        Ok(Self { coeffs, params })
    }

    pub(crate) fn from_matrix_unchecked(coeffs: DMatrix<Complex64>, params: MoyalParams) -> Self {
        debug_assert_eq!(coeffs.nrows(), params.truncation);
        Self { coeffs, params }
    }

    pub fn zeros(params: MoyalParams) -> Self {
        let n = params.truncation;
        Self::from_matrix_unchecked(DMatrix::zeros(n, n), params)
    }

    /// The unit `Σ f_nn` (constant function 1), truncated.
    pub fn identity(params: MoyalParams) -> Self {
        let n = params.truncation;
        Self::from_matrix_unchecked(DMatrix::identity(n, n), params)
    }

    /// The basis function `f_mn` as an element (matrix unit `e_mn`).
    pub fn basis(m: usize, n: usize, params: MoyalParams) -> Result<Self> {
        let size = params.truncation;
        if m >= size || n >= size {
            return Err(Error::IndexOutOfRange { m, n, truncation: size });
        }
        let mut e = Self::zeros(params);
        e.coeffs[(m, n)] = Complex64::new(1.0, 0.0);
        Ok(e)
    }

    pub fn coeffs(&self) -> &DMatrix<Complex64> {
        &self.coeffs
    }

    pub fn params(&self) -> MoyalParams {
        self.params
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix_unchecked(self.coeffs.adjoint(), self.params)
    }

    /// Largest `|a_mn − conj(a_nm)|`.
    pub fn self_adjoint_deviation(&self) -> f64 {
        let n = self.params.truncation;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.coeffs[(i, j)] - self.coeffs[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.self_adjoint_deviation() <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.coeffs.norm()
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        Ok(Self::from_matrix_unchecked(&self.coeffs + &other.coeffs, self.params))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self::from_matrix_unchecked(&self.coeffs * Complex64::from(alpha), self.params)
    }

    /// `a + alpha·b`
    pub fn axpy(&self, alpha: f64, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        Ok(Self::from_matrix_unchecked(
            &self.coeffs + &other.coeffs * Complex64::from(alpha),
            self.params,
        ))
    }

    /// Star commutator `a ⋆ b − b ⋆ a`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        Ok(Self::from_matrix_unchecked(
            &self.coeffs * &other.coeffs - &other.coeffs * &self.coeffs,
            self.params,
        ))
    }
}

/// `a ⋆ b` in the truncated matrix basis.
pub fn star_product_matrix(a: &MoyalElement, b: &MoyalElement) -> Result<MoyalElement> {
    a.check_params(b)?;
    Ok(MoyalElement::from_matrix_unchecked(&a.coeffs * &b.coeffs, a.params))
}

/// Truncated matrices of `z = (x⁰ + i x¹)/√2` and `z̄`.
pub fn coordinate_elements(params: MoyalParams) -> (MoyalElement, MoyalElement) {
    let n = params.truncation;
    let mut z = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..n.saturating_sub(1) {
        z[(k, k + 1)] = Complex64::from((params.theta * (k + 1) as f64).sqrt());
    }
    let zbar = z.adjoint();
    (
        MoyalElement::from_matrix_unchecked(z, params),
        MoyalElement::from_matrix_unchecked(zbar, params),
    )
}

/// Truncated matrices of the real coordinates `t = x⁰` and `x = x¹`.
pub fn real_coordinates(params: MoyalParams) -> (MoyalElement, MoyalElement) {
    let (z, zbar) = coordinate_elements(params);
    let x0 = (&z.coeffs + &zbar.coeffs) * Complex64::from(1.0 / SQRT_2);
    let x1 = (&z.coeffs - &zbar.coeffs) * Complex64::new(0.0, -1.0 / SQRT_2);
    (
        MoyalElement::from_matrix_unchecked(x0, params),
        MoyalElement::from_matrix_unchecked(x1, params),
    )
}

/// A vector state `ψ`, normalized as `2πθ Σ |ψ_m|² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    psi: DVector<Complex64>,
    params: MoyalParams,
}

impl FockVector {
    pub fn new(psi: DVector<Complex64>, params: MoyalParams) -> Result<Self> {
        if psi.len() != params.truncation {
            return Err(Error::InvalidArgument(format!(
                "state has {} components, expected {}",
                psi.len(),
                params.truncation
            )));
        }
        if psi.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite("FockVector"));
        }
        let norm = params.state_weight() * psi.norm_squared();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { psi, params })
    }

    /// Rescales an arbitrary nonzero vector onto the state normalization.
    pub fn normalized(psi: DVector<Complex64>, params: MoyalParams) -> Result<Self> {
        let n2 = psi.norm_squared();
        if !(n2 > 0.0 && n2.is_finite()) {
            return Err(Error::NotNormalized(n2));
        }
        let scale = 1.0 / (params.state_weight() * n2).sqrt();
        Self::new(psi * Complex64::from(scale), params)
    }

    pub fn psi(&self) -> &DVector<Complex64> {
        &self.psi
    }

    pub fn params(&self) -> MoyalParams {
        self.params
    }

    /// `2πθ Σ |ψ_m|²`
    pub fn norm(&self) -> f64 {
        self.params.state_weight() * self.psi.norm_squared()
    }

    /// `ψ` rescaled to unit Euclidean norm.
    pub fn unit(&self) -> DVector<Complex64> {
        &self.psi * Complex64::from(self.params.state_weight().sqrt())
    }

    /// Weight `2πθ Σ_{m ≥ N−k} |ψ_m|²` on the top `k` basis indices.
    pub fn tail_weight(&self, k: usize) -> f64 {
        let n = self.psi.len();
        let start = n.saturating_sub(k);
        self.params.state_weight()
            * self.psi.iter().skip(start).map(|c| c.norm_sqr()).sum::<f64>()
    }
}

/// `ω_ψ(a) = 2πθ ψ† a ψ`.
pub fn eval_state(psi: &FockVector, a: &MoyalElement) -> Result<Complex64> {
    if psi.params != a.params {
        return Err(Error::ParamsMismatch);
    }
    let applied = &a.coeffs * &psi.psi;
    let value = psi.psi.dotc(&applied);
    Ok(value * psi.params.state_weight())
}

/// Hermitian weight matrix `W` with `ω₁(a) − ω₂(a) = tr(W a)`.
pub(crate) fn state_difference(a: &FockVector, b: &FockVector) -> Result<DMatrix<Complex64>> {
    if a.params != b.params {
        return Err(Error::ParamsMismatch);
    }
    let w = a.params.state_weight();
    Ok((&a.psi * a.psi.adjoint() - &b.psi * b.psi.adjoint()) * Complex64::from(w))
}
