//! Coherent states and translations of vector states.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::{FockVector, MoyalParams, NORMALIZATION_TOL};
use crate::error::{Error, Result};

/// Largest probability a translation may push past the truncation.
pub const TRANSLATION_LEAKAGE_LIMIT: f64 = 1e-6;

/// The oscillator level `|n⟩`: `ψ_m = δ_mn / √(2πθ)`.
pub fn number_state(n: usize, params: MoyalParams) -> Result<FockVector> {
    let size = params.truncation();
    if n >= size {
        return Err(Error::IndexOutOfRange { m: n, n, truncation: size });
    }
    let mut psi = DVector::zeros(size);
    psi[n] = Complex64::from(1.0 / params.state_weight().sqrt());
    FockVector::new(psi, params)
}

// Σ_{m ≥ n} e^{-x} x^m / m!, summed directly to avoid cancellation.
fn poisson_tail(x: f64, n: usize) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let mut term = (-x).exp();
    for m in 1..=n {
        term *= x / m as f64;
    }
    let mut tail = 0.0;
    let mut m = n;
    loop {
        tail += term;
        m += 1;
        term *= x / m as f64;
        if term <= tail * 1e-17 || term == 0.0 {
            break;
        }
    }
    tail
}

/// `φ_m = e^{-|κ|²/2θ} (κ/√θ)^m / √(m! 2πθ)`, truncated at `N`.
///
/// Fails when the truncated probability `Σ_{m ≥ N} |φ_m|²` reaches
/// [`NORMALIZATION_TOL`].
pub fn coherent_state(kappa: Complex64, params: MoyalParams) -> Result<FockVector> {
    if !(kappa.re.is_finite() && kappa.im.is_finite()) {
        return Err(Error::NonFinite("coherent state κ"));
    }
    let theta = params.theta();
    let size = params.truncation();
    let x = kappa.norm_sqr() / theta;
    let leakage = poisson_tail(x, size);
    if leakage >= NORMALIZATION_TOL {
        return Err(Error::TruncationInsufficient {
            truncation: size,
            leakage,
            limit: NORMALIZATION_TOL,
        });
    }
    let alpha = kappa / theta.sqrt();
    let mut psi = DVector::zeros(size);
    let mut c = Complex64::from((-0.5 * x).exp() / params.state_weight().sqrt());
    for m in 0..size {
        if m > 0 {
            c *= alpha / (m as f64).sqrt();
        }
        psi[m] = c;
    }
    FockVector::new(psi, params)
}

/// Applies the displacement `exp((κ Z̄ − κ̄ Z)/θ)`, which carries the ground
/// state to the coherent state of parameter `κ`.
///
/// The exponential is taken on an enlarged Fock space; the probability that
/// ends up beyond the original truncation is the renormalization correction
/// and must stay below [`TRANSLATION_LEAKAGE_LIMIT`].
pub fn translate(psi: &FockVector, kappa: Complex64) -> Result<FockVector> {
    if !(kappa.re.is_finite() && kappa.im.is_finite()) {
        return Err(Error::NonFinite("translation κ"));
    }
    if kappa == Complex64::new(0.0, 0.0) {
        return Ok(psi.clone());
    }
    let params = psi.params();
    let n = params.truncation();
    let theta = params.theta();
    let alpha = kappa / theta.sqrt();
    let big = 2 * n + 16 + (4.0 * alpha.norm_sqr()).ceil() as usize;

    // H = i(α a† − ᾱ a) is Hermitian and exp(α a† − ᾱ a) = exp(−iH).
    let mut h = DMatrix::<Complex64>::zeros(big, big);
    let i = Complex64::new(0.0, 1.0);
    for k in 0..big - 1 {
        let s = ((k + 1) as f64).sqrt();
        // a†_{k+1,k} = √(k+1), a_{k,k+1} = √(k+1)
        h[(k + 1, k)] = i * alpha * s;
        h[(k, k + 1)] = -i * alpha.conj() * s;
    }
    let eig = SymmetricEigen::new(h);
    let v = &eig.eigenvectors;

    let mut start = DVector::<Complex64>::zeros(big);
    start.rows_mut(0, n).copy_from(&psi.unit());
    let mut coeff = v.adjoint() * start;
    for (c, &lambda) in coeff.iter_mut().zip(eig.eigenvalues.iter()) {
        *c *= Complex64::new(0.0, -lambda).exp();
    }
    let moved = v * coeff;

    let total = moved.norm_squared();
    let kept: f64 = moved.rows(0, n).norm_squared();
    let leakage = (total - kept).max(0.0) / total;
    if leakage >= TRANSLATION_LEAKAGE_LIMIT {
        return Err(Error::TruncationInsufficient {
            truncation: n,
            leakage,
            limit: TRANSLATION_LEAKAGE_LIMIT,
        });
    }
    FockVector::normalized(moved.rows(0, n).into_owned(), params)
}
