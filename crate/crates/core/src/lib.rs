//! Causal relations between states on noncommutative spacetime models.
//!
//! Three families of models are covered:
//!
//! * [`almost_m2`]: the product of flat 1+1 Minkowski space with the finite
//!   algebra `M₂(ℂ)`, whose pure states carry an extra point on a sphere.
//! * [`two_sheet`]: two copies of Minkowski space joined through a finite
//!   Dirac operator (optionally with a position-dependent Higgs weight).
//! * [`moyal`]: the Moyal plane in the Wigner matrix basis, with coherent
//!   and generalized coherent states.
//!
//! The closed-form predicates are complemented by [`verifier`], which
//! builds `J[D, a]` on a truncated Fock space and certifies causal elements
//! through negative semidefiniteness.
//!
//! Everything works in natural units (`ħ = c = 1`) unless a function takes
//! an explicit [`spacetime::UnitSystem`].

pub mod almost_m2;
pub mod error;
pub mod moyal;
pub mod quadrature;
pub mod spacetime;
pub mod two_sheet;
pub mod verdict;
pub mod verifier;

pub use num_complex::Complex64;

pub use crate::almost_m2::{FiniteDiracM2, InternalStateS2, ProductStateM2};
pub use crate::error::{Error, Result};
pub use crate::moyal::{FockVector, GeneralizedCoherentState, MoyalElement, MoyalParams};
pub use crate::spacetime::{CausalCurve, EventPoint, ScalarField, UnitSystem};
pub use crate::two_sheet::{FiniteDiracTwoSheet, Sheet, SheetState};
pub use crate::verdict::CausalVerdict;
pub use crate::verifier::{CausalWitness, GammaConventions, TruncatedOperator};

/// Version string stamped into result provenance.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
