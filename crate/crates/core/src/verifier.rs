//! Operator-level causality on the truncated Moyal plane.
//!
//! A self-adjoint element `a` is causal when `⟨φ, J[D, a] φ⟩ ≤ 0` for every
//! spinor `φ`, with `D = −i ∂_μ ⊗ γ^μ` and `J = iγ⁰`. Derivatives are inner,
//! `∂₀a = (i/θ)[x¹, a]` and `∂₁a = −(i/θ)[x⁰, a]`, so on the truncated
//! basis they become commutators with the tridiagonal coordinate matrices.
//!
//! Those commutators are exact on indices `0..N−1` but not on the last one,
//! so the spectrum of `J[D, a]` is taken on the compression to the first
//! `N − 1` Fock indices (for both spinor components).

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moyal::{self, FockVector, MoyalElement, MoyalParams};
use crate::verdict::CausalVerdict;

/// Default eigenvalue tolerance for [`is_causal_element`].
pub const DEFAULT_TOL: f64 = 1e-9;

/// Share of an eigenvector allowed on the two highest reliable indices
/// before a violation is blamed on the truncation.
pub const EDGE_WEIGHT_LIMIT: f64 = 0.01;

const SELF_ADJOINT_TOL: f64 = 1e-12;
const HERMITICITY_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Flat 1+1 Dirac matrices, signature `(−, +)`: `γ⁰ = iσ¹`, `γ¹ = σ²`,
/// and the fundamental symmetry `J = iγ⁰`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaConventions {
    pub gamma0: Matrix2<Complex64>,
    pub gamma1: Matrix2<Complex64>,
    pub fundamental_symmetry: Matrix2<Complex64>,
}

impl Default for GammaConventions {
    fn default() -> Self {
        Self::flat()
    }
}

impl GammaConventions {
    pub fn flat() -> Self {
        let gamma0 = Matrix2::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(0.0, 0.0));
        let gamma1 = Matrix2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0));
        let fundamental_symmetry = gamma0 * c(0.0, 1.0);
        Self {
            gamma0,
            gamma1,
            fundamental_symmetry,
        }
    }

    pub fn gamma(&self, mu: usize) -> Matrix2<Complex64> {
        match mu {
            0 => self.gamma0,
            1 => self.gamma1,
            _ => panic!("1+1 dimensions have only γ⁰ and γ¹"),
        }
    }

    /// Checks the Clifford relations and the properties of `J`. Every entry
    /// is in `{0, ±1, ±i}`, so the comparisons are exact.
    pub fn check(&self) -> Result<()> {
        let eta = [-1.0, 1.0];
        let id = Matrix2::<Complex64>::identity();
        let fail = |what: &str| Err(Error::Numerical(format!("gamma conventions: {what}")));
        for a in 0..2 {
            for b in 0..2 {
                let anti = self.gamma(a) * self.gamma(b) + self.gamma(b) * self.gamma(a);
                let expect = if a == b { id * c(2.0 * eta[a], 0.0) } else { Matrix2::zeros() };
                if anti != expect {
                    return fail("{γ^a, γ^b} ≠ 2η^{ab}");
                }
            }
        }
        if self.gamma0.adjoint() != -self.gamma0 {
            return fail("γ⁰ is not anti-Hermitian");
        }
        if self.gamma1.adjoint() != self.gamma1 {
            return fail("γ¹ is not Hermitian");
        }
        let j = self.fundamental_symmetry;
        if j != self.gamma0 * c(0.0, 1.0) || j * j != id || j.adjoint() != j {
            return fail("J must equal iγ⁰ with J² = 1 and J* = J");
        }
        Ok(())
    }
}

/// The inner derivations `∂₀`, `∂₁` on truncated coefficient matrices.
#[derive(Debug, Clone)]
pub struct DerivativeMaps {
    params: MoyalParams,
    t: DMatrix<Complex64>,
    x: DMatrix<Complex64>,
}

impl DerivativeMaps {
    pub fn new(params: MoyalParams) -> Self {
        let (t, x) = moyal::real_coordinates(params);
        Self {
            params,
            t: t.coeffs().clone(),
            x: x.coeffs().clone(),
        }
    }

    pub fn params(&self) -> MoyalParams {
        self.params
    }

    fn check(&self, a: &MoyalElement) -> Result<()> {
        if a.params() == self.params {
            Ok(())
        } else {
            Err(Error::ParamsMismatch)
        }
    }

    fn d0_raw(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        (&self.x * a - a * &self.x) * c(0.0, 1.0 / self.params.theta())
    }

    fn d1_raw(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        (&self.t * a - a * &self.t) * c(0.0, -1.0 / self.params.theta())
    }

    /// `∂₀ a = (i/θ)[x¹, a]`
    pub fn d0(&self, a: &MoyalElement) -> Result<MoyalElement> {
        self.check(a)?;
        Ok(MoyalElement::from_matrix_unchecked(self.d0_raw(a.coeffs()), self.params))
    }

    /// `∂₁ a = −(i/θ)[x⁰, a]`
    pub fn d1(&self, a: &MoyalElement) -> Result<MoyalElement> {
        self.check(a)?;
        Ok(MoyalElement::from_matrix_unchecked(self.d1_raw(a.coeffs()), self.params))
    }

    // J[D, a] = Σ_μ (γ⁰γ^μ) ⊗ ∂_μ a, spinor-major layout.
    fn jda_raw(&self, a: &DMatrix<Complex64>, gammas: &GammaConventions) -> DMatrix<Complex64> {
        let n = self.params.truncation();
        let d = [self.d0_raw(a), self.d1_raw(a)];
        let k = [gammas.gamma0 * gammas.gamma0, gammas.gamma0 * gammas.gamma1];
        let mut out = DMatrix::zeros(2 * n, 2 * n);
        for s in 0..2 {
            for r in 0..2 {
                let mut block = out.view_mut((s * n, r * n), (n, n));
                for mu in 0..2 {
                    let w = k[mu][(s, r)];
                    if w != c(0.0, 0.0) {
                        block += &d[mu] * w;
                    }
                }
            }
        }
        out
    }
}

pub fn derivative_matrices(params: MoyalParams) -> DerivativeMaps {
    DerivativeMaps::new(params)
}

/// `J[D, a]` on `ℂ^N ⊗ ℂ²`, stored spinor-major: index `s·N + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    matrix: DMatrix<Complex64>,
    params: MoyalParams,
}

impl TruncatedOperator {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn params(&self) -> MoyalParams {
        self.params
    }

    /// Compression to Fock indices `0..N−1` in both spinor components.
    pub fn interior(&self) -> DMatrix<Complex64> {
        compress(&self.matrix, self.params.truncation())
    }

    /// Ascending eigenvalues of [`TruncatedOperator::interior`].
    pub fn interior_spectrum(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.interior().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

fn compress(m: &DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    let k = n - 1;
    DMatrix::from_fn(2 * k, 2 * k, |i, j| {
        let (si, ki) = (i / k, i % k);
        let (sj, kj) = (j / k, j % k);
        m[(si * n + ki, sj * n + kj)]
    })
}

fn require_verifiable(params: MoyalParams) -> Result<()> {
    if params.truncation() < 3 {
        return Err(Error::InvalidArgument(
            "operator checks need truncation ≥ 3".into(),
        ));
    }
    Ok(())
}

fn require_self_adjoint(a: &MoyalElement) -> Result<()> {
    let dev = a.self_adjoint_deviation();
    let scale = a.coeffs().camax().max(1.0);
    if dev > SELF_ADJOINT_TOL * scale {
        return Err(Error::NotSelfAdjoint(dev));
    }
    Ok(())
}

pub fn assemble_jda(a: &MoyalElement) -> Result<TruncatedOperator> {
    require_self_adjoint(a)?;
    let maps = DerivativeMaps::new(a.params());
    assemble_with(&maps, a)
}

fn assemble_with(maps: &DerivativeMaps, a: &MoyalElement) -> Result<TruncatedOperator> {
    maps.check(a)?;
    let matrix = maps.jda_raw(a.coeffs(), &GammaConventions::flat());
    let scale = matrix.camax().max(1.0);
    let asym = (&matrix - matrix.adjoint()).camax();
    if asym > HERMITICITY_TOL * scale {
        return Err(Error::Numerical(format!("J[D,a] not Hermitian (deviation {asym:e})")));
    }
    Ok(TruncatedOperator {
        matrix,
        params: a.params(),
    })
}

/// Result of an NSD certification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElementCertificate {
    pub verdict: CausalVerdict,
    pub lambda_max: f64,
    /// Ascending interior spectrum of `J[D, a]`.
    pub spectrum: Vec<f64>,
}

/// Certifies `a` through the largest eigenvalue of `J[D, a]`.
///
/// `λ_max ≤ tol` gives `Causal`. Otherwise the eigenvectors with eigenvalue
/// above `tol` span a violating subspace; if some unit vector in it carries
/// less than [`EDGE_WEIGHT_LIMIT`] of its weight on the two highest reliable
/// Fock indices the violation is genuine (`NotCausal`), else it is blamed on
/// the truncation (`Undetermined`).
pub fn certify_element(a: &MoyalElement, tol: f64) -> Result<ElementCertificate> {
    require_verifiable(a.params())?;
    let op = assemble_jda(a)?;
    certify_operator(&op, tol)
}

fn certify_operator(op: &TruncatedOperator, tol: f64) -> Result<ElementCertificate> {
    let interior = op.interior();
    let k = op.params.truncation() - 1;
    let eig = interior.symmetric_eigen();
    let mut spectrum: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    spectrum.sort_by(f64::total_cmp);
    let lambda_max = *spectrum.last().expect("interior is nonempty");
    if lambda_max <= tol {
        return Ok(ElementCertificate {
            verdict: CausalVerdict::Causal,
            lambda_max,
            spectrum,
        });
    }
    let positive: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] > tol)
        .collect();
    let basis = DMatrix::from_fn(2 * k, positive.len(), |r, j| eig.eigenvectors[(r, positive[j])]);
    let edge: Vec<usize> = [k.saturating_sub(2), k - 1]
        .into_iter()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .flat_map(|i| [i, k + i])
        .collect();
    let rows = DMatrix::from_fn(edge.len(), positive.len(), |r, j| basis[(edge[r], j)]);
    let edge_gram = rows.adjoint() * rows;
    let min_edge = edge_gram
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let verdict = if min_edge < EDGE_WEIGHT_LIMIT {
        CausalVerdict::NotCausal
    } else {
        CausalVerdict::Undetermined("truncation edge".into())
    };
    Ok(ElementCertificate {
        verdict,
        lambda_max,
        spectrum,
    })
}

pub fn is_causal_element(a: &MoyalElement, tol: f64) -> Result<CausalVerdict> {
    certify_element(a, tol).map(|c| c.verdict)
}

/// A certified causal element separating two states.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalWitness {
    /// Self-adjoint, unit Frobenius norm, certified causal.
    pub element: MoyalElement,
    /// `ω₁(a) − ω₂(a) > 0`
    pub margin: f64,
    pub lambda_max: f64,
    pub spectrum: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessSearch {
    pub budget: usize,
    pub seed: u64,
    pub tol: f64,
    /// Per-unit factor applied to coefficients with `m + n > N`.
    pub damping: f64,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        Self {
            budget: 2000,
            seed: 0,
            tol: DEFAULT_TOL,
            damping: 0.5,
        }
    }
}

struct Projector<'a> {
    maps: &'a DerivativeMaps,
    time: DMatrix<Complex64>,
    weight: &'a DMatrix<Complex64>,
    gammas: GammaConventions,
}

impl Projector<'_> {
    // Shift by a multiple of t until J[D, ·] ≤ 0 on the interior, then
    // normalize. Returns the element and its margin.
    fn project(&self, b: &DMatrix<Complex64>) -> Option<(DMatrix<Complex64>, f64)> {
        let n = self.maps.params.truncation();
        let jda = compress(&self.maps.jda_raw(b, &self.gammas), n);
        let lambda = jda
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        // J[D, t] = −1 on the interior, so adding c·t lowers the spectrum by c.
        let pad = 1e-12 * (1.0 + jda.camax());
        let shift = if lambda > -pad { lambda + pad } else { 0.0 };
        let mut a = b + &self.time * c(shift, 0.0);
        let norm = a.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return None;
        }
        a /= c(norm, 0.0);
        let margin = self.weight.dotc(&a).re;
        Some((a, margin))
    }
}

fn damping_mask(n: usize, factor: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| {
        let excess = (i + j).saturating_sub(n);
        factor.powi(excess as i32)
    })
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng, mask: &DMatrix<f64>) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c(rng.gen_range(-1.0..1.0) * mask[(i, i)], 0.0);
        for j in i + 1..n {
            let v = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * mask[(i, j)];
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    m
}

/// Searches for a causal element `a` with `ω₁(a) > ω₂(a)`, which rules out
/// `state1 ⪯ state2`.
///
/// Candidates start from the damped state difference and the lightlike
/// coordinates `t ± x`, then follow seeded local moves; each candidate is
/// made causal by shifting along `t` and scaled to unit Frobenius norm. The
/// first candidate whose margin exceeds `10·tol` and which passes
/// [`certify_element`] is returned. `None` is not a proof of causality.
pub fn find_violation(
    state1: &FockVector,
    state2: &FockVector,
    search: &WitnessSearch,
) -> Result<Option<CausalWitness>> {
    let params = state1.params();
    if state2.params() != params {
        return Err(Error::ParamsMismatch);
    }
    require_verifiable(params)?;
    let n = params.truncation();
    let maps = DerivativeMaps::new(params);
    let weight = moyal::state_difference(state1, state2)?;
    let mask = damping_mask(n, search.damping);
    let proj = Projector {
        maps: &maps,
        time: maps.t.clone(),
        weight: &weight,
        gammas: GammaConventions::flat(),
    };
    let threshold = 10.0 * search.tol;

    let mut gradient = weight.component_mul(&mask.map(|v| c(v, 0.0)));
    let gnorm = gradient.norm();
    if gnorm == 0.0 {
        return Ok(None);
    }
    gradient /= c(gnorm, 0.0);

    let confirm = |a: &DMatrix<Complex64>, margin: f64| -> Result<Option<CausalWitness>> {
        let element = MoyalElement::from_matrix_unchecked(a.clone(), params);
        let cert = certify_element(&element, search.tol)?;
        Ok(cert.verdict.is_causal().then_some(CausalWitness {
            element,
            margin,
            lambda_max: cert.lambda_max,
            spectrum: cert.spectrum,
        }))
    };

    let seeds = [
        gradient.clone(),
        &maps.t - &maps.x,
        &maps.t + &maps.x,
        maps.t.clone(),
    ];
    let mut best: Option<(DMatrix<Complex64>, f64)> = None;
    for seed in &seeds {
        if let Some((a, m)) = proj.project(seed) {
            if best.as_ref().is_none_or(|b| m > b.1) {
                best = Some((a, m));
            }
        }
    }
    let Some((mut current, mut margin)) = best else {
        return Ok(None);
    };
    if margin > threshold {
        if let Some(w) = confirm(&current, margin)? {
            return Ok(Some(w));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut step = 0.5;
    for _ in 0..search.budget {
        let sigma: f64 = rng.gen_range(0.0..1.0);
        let noise = random_hermitian(n, &mut rng, &mask);
        let noise_norm = noise.norm().max(f64::MIN_POSITIVE);
        let direction = &gradient + noise * c(sigma / noise_norm, 0.0);
        let candidate = &current + direction * c(step, 0.0);
        match proj.project(&candidate) {
            Some((a, m)) if m > margin => {
                current = a;
                margin = m;
                step = (step * 1.5).min(4.0);
                if margin > threshold {
                    if let Some(w) = confirm(&current, margin)? {
                        return Ok(Some(w));
                    }
                }
            }
            _ => step = (step * 0.8).max(1e-6),
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moyal::real_coordinates;

    fn params(n: usize) -> MoyalParams {
        MoyalParams::new(1.0, n).unwrap()
    }

    #[test]
    fn gamma_algebra_holds() {
        GammaConventions::flat().check().unwrap();
        let mut bad = GammaConventions::flat();
        bad.gamma1 = bad.gamma1 * c(-1.0, 0.0) * c(0.0, 1.0);
        assert!(bad.check().is_err());
    }

    #[test]
    fn derivatives_of_coordinates() {
        let n = 10;
        let p = params(n);
        let maps = derivative_matrices(p);
        let (t, x) = real_coordinates(p);
        let dt0 = maps.d0(&t).unwrap();
        let dx0 = maps.d0(&x).unwrap();
        let dt1 = maps.d1(&t).unwrap();
        let dx1 = maps.d1(&x).unwrap();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((dt0.coeffs()[(i, j)] - c(id, 0.0)).norm() < 1e-12);
                assert!(dx0.coeffs()[(i, j)].norm() < 1e-12);
                assert!(dt1.coeffs()[(i, j)].norm() < 1e-12);
                assert!((dx1.coeffs()[(i, j)] - c(id, 0.0)).norm() < 1e-12);
            }
        }
        let one = MoyalElement::identity(p);
        assert_eq!(maps.d0(&one).unwrap(), MoyalElement::zeros(p));
        assert_eq!(maps.d1(&one).unwrap(), MoyalElement::zeros(p));
    }

    #[test]
    fn coordinate_certificates() {
        let p = params(16);
        let (t, x) = real_coordinates(p);
        let ct = certify_element(&t, DEFAULT_TOL).unwrap();
        assert_eq!(ct.verdict, CausalVerdict::Causal);
        assert!(ct.spectrum.iter().all(|v| (v + 1.0).abs() < 1e-9));
        let cx = certify_element(&x, DEFAULT_TOL).unwrap();
        assert_eq!(cx.verdict, CausalVerdict::NotCausal);
        assert!((cx.lambda_max - 1.0).abs() < 1e-9);
        let light = t.add(&x).unwrap();
        let cl = certify_element(&light, DEFAULT_TOL).unwrap();
        assert_eq!(cl.verdict, CausalVerdict::Causal);
        assert!(cl.spectrum.iter().all(|v| v.abs() < 1e-9 || (v + 2.0).abs() < 1e-9));
        let zero = assemble_jda(&MoyalElement::identity(p)).unwrap();
        assert_eq!(zero.matrix().camax(), 0.0);
    }

    #[test]
    fn rejects_non_self_adjoint_and_tiny_truncation() {
        let p = params(4);
        let e01 = MoyalElement::basis(0, 1, p).unwrap();
        assert!(matches!(assemble_jda(&e01), Err(Error::NotSelfAdjoint(_))));
        let small = MoyalElement::identity(params(2));
        assert!(is_causal_element(&small, 0.0).is_err());
    }

    #[test]
    fn violation_on_the_edge_is_undetermined() {
        // a concentrated on the top reliable indices
        let n = 8;
        let p = params(n);
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        m[(n - 2, n - 3)] = c(0.0, 1.0);
        m[(n - 3, n - 2)] = c(0.0, -1.0);
        let a = MoyalElement::from_matrix(m, p).unwrap();
        let cert = certify_element(&a, DEFAULT_TOL).unwrap();
        assert!(cert.lambda_max > 0.0);
        assert!(cert.verdict.is_undetermined(), "{:?}", cert.verdict);
    }

    #[test]
    fn identical_states_have_no_witness() {
        let p = params(12);
        let s = moyal::coherent_state(c(0.2, 0.1), p).unwrap();
        let search = WitnessSearch { budget: 50, ..Default::default() };
        assert!(find_violation(&s, &s, &search).unwrap().is_none());
    }
}
