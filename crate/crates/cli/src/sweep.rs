//! Grid and curve sweeps written as CSV for plotting.

use std::fmt::Write as _;

use ncc_core::moyal::{coherent_causal, level_jump_bound};
use ncc_core::two_sheet::{cross_sheet_bound_seconds, zitterbewegung_period};
use ncc_core::{Complex64, FiniteDiracTwoSheet, UnitSystem};
use serde::Serialize;

use crate::error::{CliError, Result};

/// Axis-aligned grid of displacements `Δκ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGrid {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub re_steps: usize,
    pub im_steps: usize,
}

impl ConeGrid {
    pub fn square(half_width: f64, steps: usize) -> Self {
        Self { re: (-half_width, half_width), im: (-half_width, half_width), re_steps: steps, im_steps: steps }
    }

    fn validate(&self) -> Result<()> {
        for (name, (lo, hi), n) in [("re", self.re, self.re_steps), ("im", self.im, self.im_steps)] {
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return Err(CliError::Argument(format!("{name} range [{lo}, {hi}] is not a finite interval")));
            }
            if n == 0 {
                return Err(CliError::Argument(format!("{name} needs at least one grid point")));
            }
            if n == 1 && lo != hi {
                return Err(CliError::Argument(format!("{name}: a single grid point needs min = max")));
            }
        }
        Ok(())
    }
}

/// `i`-th of `n` evenly spaced values from `lo` to `hi`, both ends exact.
pub fn grid_value(i: usize, n: usize, lo: f64, hi: f64) -> f64 {
    if n == 1 {
        return lo;
    }
    let last = (n - 1) as f64;
    ((last - i as f64) * lo + i as f64 * hi) / last
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConePoint {
    pub re: f64,
    pub im: f64,
    pub causal: bool,
}

/// Cone membership of each grid displacement, real part outermost.
pub fn scan_cone(grid: &ConeGrid) -> Result<Vec<ConePoint>> {
    grid.validate()?;
    let origin = Complex64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(grid.re_steps * grid.im_steps);
    for i in 0..grid.re_steps {
        let re = grid_value(i, grid.re_steps, grid.re.0, grid.re.1);
        for j in 0..grid.im_steps {
            let im = grid_value(j, grid.im_steps, grid.im.0, grid.im.1);
            out.push(ConePoint { re, im, causal: coherent_causal(origin, Complex64::new(re, im)) });
        }
    }
    Ok(out)
}

pub fn cone_csv(points: &[ConePoint]) -> String {
    let mut s = String::from("re,im,causal\n");
    for p in points {
        writeln!(s, "{},{},{}", p.re, p.im, p.causal).unwrap();
    }
    s
}

/// `(n, bound)` for `n = 0..=n_max`.
pub fn bound_curve(theta: f64, n_max: usize) -> Result<Vec<(usize, f64)>> {
    (0..=n_max).map(|n| Ok((n, level_jump_bound(n, theta)?))).collect()
}

pub fn bound_csv(rows: &[(usize, f64)]) -> String {
    let mut s = String::from("n,bound\n");
    for (n, b) in rows {
        writeln!(s, "{n},{b}").unwrap();
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZitterReport {
    pub mass_kg: f64,
    pub hbar: f64,
    pub c: f64,
    pub period_s: f64,
    pub cross_sheet_bound_s: f64,
    pub natural_mass: f64,
    pub natural_bound: f64,
}

pub fn zitter(mass_kg: f64, units: UnitSystem, natural_mass: f64) -> Result<ZitterReport> {
    let natural = FiniteDiracTwoSheet::new(Complex64::new(natural_mass, 0.0))?;
    Ok(ZitterReport {
        mass_kg,
        hbar: units.hbar,
        c: units.c,
        period_s: zitterbewegung_period(mass_kg, &units)?,
        cross_sheet_bound_s: cross_sheet_bound_seconds(mass_kg, &units)?,
        natural_mass,
        natural_bound: natural.crossing_time()?,
    })
}

impl ZitterReport {
    pub fn text(&self) -> String {
        format!(
            "mass                 {} kg\nzitterbewegung period {:e} s\ncross-sheet bound     {:e} s\nnatural-units bound   {} (|m| = {})\n",
            self.mass_kg, self.period_s, self.cross_sheet_bound_s, self.natural_bound, self.natural_mass
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn three_by_three_cone() {
        let pts = scan_cone(&ConeGrid::square(1.0, 3)).unwrap();
        let causal: Vec<_> = pts.iter().filter(|p| p.causal).map(|p| (p.re, p.im)).collect();
        assert_eq!(causal, vec![(0.0, 0.0), (1.0, -1.0), (1.0, 0.0), (1.0, 1.0)]);
    }

    #[test]
    fn grid_endpoints_exact() {
        assert_eq!(grid_value(0, 101, -1.0, 1.0), -1.0);
        assert_eq!(grid_value(50, 101, -1.0, 1.0), 0.0);
        assert_eq!(grid_value(100, 101, -1.0, 1.0), 1.0);
        for i in 0..101 {
            assert_eq!(grid_value(i, 101, -1.0, 1.0), -grid_value(100 - i, 101, -1.0, 1.0));
        }
    }

    #[test]
    fn bounds_at_theta_two() {
        let rows = bound_curve(2.0, 3).unwrap();
        let want = [PI / 2.0, PI / (2.0 * 2f64.sqrt()), PI / (2.0 * 3f64.sqrt()), PI / 4.0];
        for ((_, b), w) in rows.iter().zip(want) {
            assert!((b - w).abs() < 1e-12);
        }
        assert_eq!(bound_curve(1.0, 0).unwrap().len(), 1);
        assert!(bound_curve(1e-4, 10).unwrap().iter().all(|(_, b)| *b < 0.02));
        assert!(bound_curve(0.0, 3).is_err());
    }

    #[test]
    fn bad_grids() {
        assert!(scan_cone(&ConeGrid { re: (1.0, -1.0), ..ConeGrid::square(1.0, 3) }).is_err());
        assert!(scan_cone(&ConeGrid::square(1.0, 0)).is_err());
        assert!(scan_cone(&ConeGrid::square(1.0, 1)).is_err());
        assert_eq!(scan_cone(&ConeGrid::square(0.0, 1)).unwrap().len(), 1);
    }

    #[test]
    fn zitter_natural_bound() {
        let r = zitter(9.1093837e-31, UnitSystem::SI, 1.0).unwrap();
        assert_eq!(r.cross_sheet_bound_s, r.period_s / 2.0);
        assert!((r.natural_bound - PI / 2.0).abs() < 1e-15);
        assert!(zitter(-1.0, UnitSystem::SI, 1.0).is_err());
    }
}
