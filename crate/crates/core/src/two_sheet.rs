//! The two-sheeted spacetime `M × ℂ²`.
//!
//! Order within a sheet is the base order. Crossing from one sheet to the
//! other needs proper time at least `π / (2|m|)`, or, with a position
//! dependent Higgs field `ψ`, a curve whose weighted proper time
//! `∫ |ψ| dτ` reaches `π/2`. Gauge potentials do not enter either condition,
//! so nothing here takes one.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spacetime::{self, EventPoint, ScalarField, SearchConfig, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sheet {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sheet {
    pub fn flipped(self) -> Self {
        match self {
            Sheet::Plus => Sheet::Minus,
            Sheet::Minus => Sheet::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SheetState {
    pub base: EventPoint,
    pub sheet: Sheet,
}

impl SheetState {
    pub fn new(t: f64, x: f64, sheet: Sheet) -> Result<Self> {
        Ok(Self {
            base: EventPoint::new(t, x)?,
            sheet,
        })
    }
}

/// Off-diagonal finite Dirac operator `[[0, m], [m̄, 0]]`; `1/|m|` is the
/// distance between the sheets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteDiracTwoSheet {
    pub m: Complex64,
}

impl FiniteDiracTwoSheet {
    pub fn new(m: Complex64) -> Result<Self> {
        if !(m.re.is_finite() && m.im.is_finite()) {
            return Err(Error::NonFinite("FiniteDiracTwoSheet"));
        }
        Ok(Self { m })
    }

    pub fn sheet_distance(&self) -> f64 {
        1.0 / self.m.norm()
    }

    /// `π / (2|m|)`, the least proper time for a sheet change.
    pub fn crossing_time(&self) -> Result<f64> {
        let m = self.m.norm();
        if m == 0.0 {
            return Err(Error::DegenerateDirac(
                "m = 0 disconnects the sheets".into(),
            ));
        }
        Ok(FRAC_PI_2 / m)
    }
}

pub fn causally_related_sheets(
    a: &SheetState,
    b: &SheetState,
    dirac: &FiniteDiracTwoSheet,
    tol: f64,
) -> Result<bool> {
    if a.sheet == b.sheet {
        return Ok(spacetime::is_causal(a.base, b.base));
    }
    let bound = dirac.crossing_time()?;
    Ok(match spacetime::lorentzian_distance(a.base, b.base) {
        Some(tau) => tau >= bound - tol,
        None => false,
    })
}

/// Outcome of the Higgs-weighted check, with the optimizer's lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HiggsCheck {
    pub related: bool,
    /// Largest `∫|ψ| dτ` found, absent for same-sheet or non-causal bases.
    pub weighted_tau: Option<f64>,
}

pub fn causally_related_sheets_higgs(
    a: &SheetState,
    b: &SheetState,
    field: &ScalarField,
    search: &SearchConfig,
    tol: f64,
) -> Result<HiggsCheck> {
    if !spacetime::is_causal(a.base, b.base) {
        return Ok(HiggsCheck { related: false, weighted_tau: None });
    }
    if a.sheet == b.sheet {
        return Ok(HiggsCheck { related: true, weighted_tau: None });
    }
    let best = spacetime::maximize_weighted_proper_time(a.base, b.base, field, search)?;
    Ok(HiggsCheck {
        related: best.value >= FRAC_PI_2 - tol,
        weighted_tau: Some(best.value),
    })
}

fn check_mass(mass: f64) -> Result<()> {
    if mass > 0.0 && mass.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("mass must be positive, got {mass}")))
    }
}

/// `T_ZB = πħ / (m c²)`.
pub fn zitterbewegung_period(mass: f64, units: &UnitSystem) -> Result<f64> {
    check_mass(mass)?;
    units.validate()?;
    Ok(PI * units.hbar / (mass * units.c * units.c))
}

/// `πħ / (2 m c²)`, exactly half of [`zitterbewegung_period`].
pub fn cross_sheet_bound_seconds(mass: f64, units: &UnitSystem) -> Result<f64> {
    Ok(zitterbewegung_period(mass, units)? / 2.0)
}
