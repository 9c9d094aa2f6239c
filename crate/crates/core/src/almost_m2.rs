//! The almost commutative spacetime `M × M₂(ℂ)`.
//!
//! Pure states are pairs `(p, ξ)` of an event and a point on the sphere
//! `ℂP¹ ≅ S²`. With finite Dirac operator `diag(d1, d2)`, `(p, ξ) ⪯ (q, φ)`
//! iff `p ⪯ q`, `ξ` and `φ` share a parallel of latitude, and the proper time
//! from `p` to `q` is at least `Δθ / |d1 − d2|` where `Δθ` is the azimuthal
//! gap along that parallel.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spacetime::{self, EventPoint};

/// Default tolerance for latitude equality and the proper-time comparison.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InternalStateS2 {
    latitude: f64,
    azimuth: f64,
}

impl InternalStateS2 {
    /// Azimuth is reduced into `[0, 2π)`; at the poles it is set to 0.
    pub fn new(latitude: f64, azimuth: f64) -> Result<Self> {
        if !(latitude.is_finite() && azimuth.is_finite()) {
            return Err(Error::NonFinite("InternalStateS2"));
        }
        if !(-FRAC_PI_2..=FRAC_PI_2).contains(&latitude) {
            return Err(Error::InvalidArgument(format!(
                "latitude {latitude} outside [-π/2, π/2]"
            )));
        }
        let azimuth = if latitude.abs() == FRAC_PI_2 {
            0.0
        } else {
            let a = azimuth.rem_euclid(TAU);
            // rem_euclid can round up to exactly 2π
            if a >= TAU {
                0.0
            } else {
                a
            }
        };
        Ok(Self { latitude, azimuth })
    }

    pub fn latitude(&self) -> f64 {
        self.latitude
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductStateM2 {
    pub base: EventPoint,
    pub internal: InternalStateS2,
}

impl ProductStateM2 {
    pub fn new(t: f64, x: f64, latitude: f64, azimuth: f64) -> Result<Self> {
        Ok(Self {
            base: EventPoint::new(t, x)?,
            internal: InternalStateS2::new(latitude, azimuth)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiracRaw")]
pub struct FiniteDiracM2 {
    d1: f64,
    d2: f64,
}

#[derive(Deserialize)]
struct DiracRaw {
    d1: f64,
    d2: f64,
}

impl TryFrom<DiracRaw> for FiniteDiracM2 {
    type Error = Error;

    fn try_from(raw: DiracRaw) -> Result<Self> {
        FiniteDiracM2::new(raw.d1, raw.d2)
    }
}

impl FiniteDiracM2 {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
        if !(d1.is_finite() && d2.is_finite()) {
            return Err(Error::NonFinite("FiniteDiracM2"));
        }
        if d1 == d2 {
            return Err(Error::DegenerateDirac(format!("d1 = d2 = {d1}")));
        }
        Ok(Self { d1, d2 })
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }
}

/// `|d1 − d2|`: the largest azimuthal angle per unit proper time.
pub fn internal_speed_bound(dirac: &FiniteDiracM2) -> f64 {
    (dirac.d1 - dirac.d2).abs()
}

/// Shorter arc between two azimuths, in `[0, π]`.
pub fn azimuth_gap(a: &InternalStateS2, b: &InternalStateS2) -> f64 {
    let d = (a.azimuth - b.azimuth).abs();
    if d > PI {
        TAU - d
    } else {
        d
    }
}

/// Least proper time needed to rotate by `dtheta` along a parallel.
pub fn min_proper_time_m2(dtheta: f64, dirac: &FiniteDiracM2) -> Result<f64> {
    if !(0.0..=PI).contains(&dtheta) {
        return Err(Error::InvalidArgument(format!(
            "angular separation {dtheta} outside [0, π]"
        )));
    }
    Ok(dtheta / internal_speed_bound(dirac))
}

pub fn causally_related_m2(
    a: &ProductStateM2,
    b: &ProductStateM2,
    dirac: &FiniteDiracM2,
    tol: f64,
) -> bool {
    let Some(tau) = spacetime::lorentzian_distance(a.base, b.base) else {
        return false;
    };
    if (a.internal.latitude - b.internal.latitude).abs() > tol {
        return false;
    }
    let gap = azimuth_gap(&a.internal, &b.internal);
    // gap ∈ [0, π] by construction
    tau >= gap / internal_speed_bound(dirac) - tol
}
