//! Flat 1+1 Minkowski space: causal order, Lorentzian distance, proper time
//! along polylines and the Higgs-weighted proper time with its maximizer.
//!
//! Signature is `(-, +)` with `c = 1`; an event `q` lies in the causal
//! future of `p` when `q.t - p.t >= |q.x - p.x|` (closed cone, so lightlike
//! separations and `p = q` count as causal).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GaussRule;

/// Quadrature nodes per segment used by [`weighted_proper_time`].
pub const DEFAULT_QUADRATURE_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventPoint {
    pub t: f64,
    pub x: f64,
}

impl EventPoint {
    pub fn new(t: f64, x: f64) -> Result<Self> {
        if !(t.is_finite() && x.is_finite()) {
            return Err(Error::NonFinite("EventPoint"));
        }
        Ok(Self { t, x })
    }

    pub const fn origin() -> Self {
        Self { t: 0.0, x: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite()
    }
}

/// `p ⪯ q` in the closed future cone.
pub fn is_causal(p: EventPoint, q: EventPoint) -> bool {
    let dt = q.t - p.t;
    let dx = q.x - p.x;
    dt >= 0.0 && dt >= dx.abs()
}

/// Maximal proper time between `p` and `q`, or `None` when `q` is not in the
/// causal future of `p`.
pub fn lorentzian_distance(p: EventPoint, q: EventPoint) -> Option<f64> {
    if !is_causal(p, q) {
        return None;
    }
    Some(interval(q.t - p.t, q.x - p.x))
}

// √(Δt² − Δx²) for a causal separation, factored to avoid cancellation.
fn interval(dt: f64, dx: f64) -> f64 {
    let dx = dx.abs();
    ((dt - dx) * (dt + dx)).max(0.0).sqrt()
}

fn segment_ok(a: EventPoint, b: EventPoint) -> bool {
    let dt = b.t - a.t;
    let dx = b.x - a.x;
    (dt > 0.0 && dx.abs() <= dt) || (dt == 0.0 && dx == 0.0)
}

/// A future-directed causal polyline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CausalCurve {
    vertices: Vec<EventPoint>,
}

impl CausalCurve {
    pub fn new(vertices: Vec<EventPoint>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::CurveTooShort(vertices.len()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("CausalCurve"));
        }
        for (index, w) in vertices.windows(2).enumerate() {
            if !segment_ok(w[0], w[1]) {
                return Err(Error::InvalidCurve {
                    index,
                    from: (w[0].t, w[0].x),
                    to: (w[1].t, w[1].x),
                });
            }
        }
        Ok(Self { vertices })
    }

    /// The straight polyline from `p` to `q` split into `segments` equal pieces.
    pub fn straight(p: EventPoint, q: EventPoint, segments: usize) -> Result<Self> {
        if segments == 0 {
            return Err(Error::InvalidArgument("segments must be at least 1".into()));
        }
        if !is_causal(p, q) {
            return Err(Error::NotCausallyRelated);
        }
        let n = segments as f64;
        let mut vertices: Vec<EventPoint> = (0..=segments)
            .map(|k| {
                let s = k as f64 / n;
                EventPoint {
                    t: p.t + s * (q.t - p.t),
                    x: p.x + s * (q.x - p.x),
                }
            })
            .collect();
        vertices[segments] = q;
        // Interpolation rounding can tip a lightlike segment outside the cone;
        // pin such vertices back onto the line through p.
        for k in 1..=segments {
            let prev = vertices[k - 1];
            let v = &mut vertices[k];
            let dt = v.t - prev.t;
            if (v.x - prev.x).abs() > dt {
                let sign = if q.x >= p.x { 1.0 } else { -1.0 };
                if k == segments {
                    return Err(Error::NotCausallyRelated);
                }
                v.x = prev.x + sign * dt;
            }
        }
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[EventPoint] {
        &self.vertices
    }

    pub fn first(&self) -> EventPoint {
        self.vertices[0]
    }

    pub fn last(&self) -> EventPoint {
        self.vertices[self.vertices.len() - 1]
    }

    /// Sum of segment proper times.
    pub fn proper_time(&self) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| interval(w[1].t - w[0].t, w[1].x - w[0].x))
            .sum()
    }
}

pub fn proper_time(curve: &CausalCurve) -> f64 {
    curve.proper_time()
}

/// Rectangular sample grid, bilinearly interpolated. `values[i][j]` is the
/// sample at `(t[i], x[j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRaw")]
pub struct GridField {
    t: Vec<f64>,
    x: Vec<f64>,
    values: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct GridRaw {
    t: Vec<f64>,
    x: Vec<f64>,
    values: Vec<Vec<f64>>,
}

impl TryFrom<GridRaw> for GridField {
    type Error = Error;

    fn try_from(raw: GridRaw) -> Result<Self> {
        GridField::new(raw.t, raw.x, raw.values)
    }
}

impl GridField {
    pub fn new(t: Vec<f64>, x: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        let increasing = |axis: &[f64]| {
            axis.len() >= 2
                && axis.iter().all(|v| v.is_finite())
                && axis.windows(2).all(|w| w[0] < w[1])
        };
        if !increasing(&t) || !increasing(&x) {
            return Err(Error::InvalidArgument(
                "grid axes need at least two strictly increasing finite samples".into(),
            ));
        }
        if values.len() != t.len() || values.iter().any(|row| row.len() != x.len()) {
            return Err(Error::InvalidArgument(format!(
                "grid values must be {}x{}",
                t.len(),
                x.len()
            )));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("GridField"));
        }
        Ok(Self { t, x, values })
    }

    fn locate(axis: &[f64], v: f64) -> Option<(usize, f64)> {
        let last = axis.len() - 1;
        if !(v >= axis[0] && v <= axis[last]) {
            return None;
        }
        let i = match axis.partition_point(|&a| a <= v) {
            0 => 0,
            k => (k - 1).min(last - 1),
        };
        Some((i, (v - axis[i]) / (axis[i + 1] - axis[i])))
    }

    pub fn eval(&self, t: f64, x: f64) -> Result<f64> {
        let (i, s) = Self::locate(&self.t, t).ok_or_else(|| Error::FieldEvaluation {
            t,
            x,
            reason: "outside grid".into(),
        })?;
        let (j, r) = Self::locate(&self.x, x).ok_or_else(|| Error::FieldEvaluation {
            t,
            x,
            reason: "outside grid".into(),
        })?;
        let v = &self.values;
        Ok((1.0 - s) * ((1.0 - r) * v[i][j] + r * v[i][j + 1])
            + s * ((1.0 - r) * v[i + 1][j] + r * v[i + 1][j + 1]))
    }
}

/// The Higgs-type weight `ψ(t, x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScalarField {
    Constant {
        re: f64,
        #[serde(default)]
        im: f64,
    },
    /// `c0 + ct·t + cx·x`
    Affine { c0: f64, ct: f64, cx: f64 },
    /// `baseline + amplitude·exp(-((t-t0)² + (x-x0)²) / width²)`
    Gaussian {
        baseline: f64,
        amplitude: f64,
        t0: f64,
        x0: f64,
        width: f64,
    },
    Grid(GridField),
}

impl ScalarField {
    pub fn constant(value: Complex64) -> Self {
        ScalarField::Constant {
            re: value.re,
            im: value.im,
        }
    }

    pub fn eval(&self, t: f64, x: f64) -> Result<Complex64> {
        let value = match self {
            ScalarField::Constant { re, im } => Complex64::new(*re, *im),
            ScalarField::Affine { c0, ct, cx } => Complex64::from(c0 + ct * t + cx * x),
            ScalarField::Gaussian {
                baseline,
                amplitude,
                t0,
                x0,
                width,
            } => {
                let r2 = (t - t0).powi(2) + (x - x0).powi(2);
                Complex64::from(baseline + amplitude * (-r2 / (width * width)).exp())
            }
            ScalarField::Grid(grid) => Complex64::from(grid.eval(t, x)?),
        };
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::FieldEvaluation {
                t,
                x,
                reason: "non-finite value".into(),
            });
        }
        Ok(value)
    }

    pub fn magnitude(&self, t: f64, x: f64) -> Result<f64> {
        self.eval(t, x).map(|v| v.norm())
    }
}

/// Physical constants for the operations that restore units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    /// J·s
    pub hbar: f64,
    /// m/s
    pub c: f64,
}

impl UnitSystem {
    /// CODATA 2018 exact/recommended values.
    pub const SI: UnitSystem = UnitSystem {
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
    };

    pub const NATURAL: UnitSystem = UnitSystem { hbar: 1.0, c: 1.0 };

    pub fn new(hbar: f64, c: f64) -> Result<Self> {
        let units = Self { hbar, c };
        units.validate()?;
        Ok(units)
    }

    pub fn validate(&self) -> Result<()> {
        if self.hbar > 0.0 && self.c > 0.0 && self.hbar.is_finite() && self.c.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "ħ and c must be strictly positive".into(),
            ))
        }
    }
}

fn segment_weighted(a: EventPoint, b: EventPoint, field: &ScalarField, rule: &GaussRule) -> Result<f64> {
    let dt = b.t - a.t;
    let dx = b.x - a.x;
    if dt == 0.0 && dx == 0.0 {
        return Ok(0.0);
    }
    let tau = interval(dt, dx);
    if tau == 0.0 {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let u = 0.5 * (s + 1.0);
        acc += w * field.magnitude(a.t + u * dt, a.x + u * dx)?;
    }
    Ok(0.5 * acc * tau)
}

/// `∫ |ψ| dτ` along `curve`, Gauss–Legendre on each segment.
pub fn weighted_proper_time(curve: &CausalCurve, field: &ScalarField) -> Result<f64> {
    weighted_proper_time_with(curve, field, &GaussRule::legendre(DEFAULT_QUADRATURE_NODES))
}

pub fn weighted_proper_time_with(
    curve: &CausalCurve,
    field: &ScalarField,
    rule: &GaussRule,
) -> Result<f64> {
    curve
        .vertices
        .windows(2)
        .map(|w| segment_weighted(w[0], w[1], field, rule))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub segments: usize,
    pub budget: usize,
    pub seed: u64,
    pub quadrature_nodes: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            segments: 8,
            budget: 2000,
            seed: 0,
            quadrature_nodes: DEFAULT_QUADRATURE_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProperTimeOptimum {
    /// Best weighted proper time found; a lower bound on the supremum.
    pub value: f64,
    /// Weighted proper time of the straight polyline the search started from.
    pub straight: f64,
    pub curve: CausalCurve,
    pub accepted: usize,
}

/// Seeded local search for the causal polyline `p → q` maximizing `∫ |ψ| dτ`.
///
/// Interior vertices are perturbed one at a time, clamped back into the
/// intersection of the cones of their neighbours, and a move is kept only
/// when it increases the functional. The returned value never falls below
/// that of the straight polyline and is nondecreasing in `budget`.
pub fn maximize_weighted_proper_time(
    p: EventPoint,
    q: EventPoint,
    field: &ScalarField,
    config: &SearchConfig,
) -> Result<ProperTimeOptimum> {
    if !is_causal(p, q) {
        return Err(Error::NotCausallyRelated);
    }
    if config.quadrature_nodes == 0 {
        return Err(Error::InvalidArgument("quadrature_nodes must be at least 1".into()));
    }
    let rule = GaussRule::legendre(config.quadrature_nodes);
    let curve = CausalCurve::straight(p, q, config.segments)?;
    let mut v = curve.vertices;
    let mut seg: Vec<f64> = v
        .windows(2)
        .map(|w| segment_weighted(w[0], w[1], field, &rule))
        .collect::<Result<_>>()?;
    let straight: f64 = seg.iter().sum();

    let n = config.segments;
    let scale = (q.t - p.t).max((q.x - p.x).abs());
    let mut step = 0.25 * scale / n as f64;
    let floor = 1e-14 * scale.max(1e-300);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut accepted = 0;

    for _ in 0..config.budget {
        // Fixed draw pattern per iteration keeps runs with a larger budget an
        // extension of runs with a smaller one.
        let k_draw: f64 = rng.gen();
        let dt: f64 = rng.gen_range(-1.0..1.0);
        let dx: f64 = rng.gen_range(-1.0..1.0);
        if n < 2 {
            continue;
        }
        let k = 1 + ((k_draw * (n - 1) as f64) as usize).min(n - 2);
        let (prev, next) = (v[k - 1], v[k + 1]);
        let t = (v[k].t + dt * step).clamp(prev.t, next.t);
        let lo = (prev.x - (t - prev.t)).max(next.x - (next.t - t));
        let hi = (prev.x + (t - prev.t)).min(next.x + (next.t - t));
        if lo > hi {
            step = (step * 0.97).max(floor);
            continue;
        }
        let x = (v[k].x + dx * step).clamp(lo, hi);
        let cand = EventPoint { t, x };
        if !(segment_ok(prev, cand) && segment_ok(cand, next)) {
            step = (step * 0.97).max(floor);
            continue;
        }
        let left = segment_weighted(prev, cand, field, &rule);
        let right = segment_weighted(cand, next, field, &rule);
        match (left, right) {
            (Ok(l), Ok(r)) if l + r > seg[k - 1] + seg[k] => {
                v[k] = cand;
                seg[k - 1] = l;
                seg[k] = r;
                accepted += 1;
                step *= 1.2;
            }
            _ => step = (step * 0.97).max(floor),
        }
    }

    let value: f64 = seg.iter().sum::<f64>().max(straight);
    Ok(ProperTimeOptimum {
        value,
        straight,
        curve: CausalCurve { vertices: v },
        accepted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(t: f64, x: f64) -> EventPoint {
        EventPoint::new(t, x).unwrap()
    }

    #[test]
    fn causal_examples() {
        assert!(is_causal(ev(0.0, 0.0), ev(2.0, 1.0)));
        assert!(!is_causal(ev(0.0, 0.0), ev(1.0, 2.0)));
        assert!(is_causal(ev(0.0, 0.0), ev(0.0, 0.0)));
        assert!(!is_causal(ev(0.0, 0.0), ev(-1.0, 0.0)));
    }

    #[test]
    fn distance_examples() {
        let d = lorentzian_distance(ev(0.0, 0.0), ev(2.0, 1.0)).unwrap();
        assert!((d - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(lorentzian_distance(ev(0.0, 0.0), ev(1.0, 1.0)), Some(0.0));
        assert_eq!(lorentzian_distance(ev(0.0, 0.0), ev(-1.0, 0.0)), None);
    }

    #[test]
    fn proper_time_examples() {
        let c = CausalCurve::new(vec![ev(0.0, 0.0), ev(1.0, 0.0), ev(2.0, 0.5)]).unwrap();
        assert!((c.proper_time() - (1.0 + 0.75f64.sqrt())).abs() < 1e-15);
        let c = CausalCurve::new(vec![ev(0.0, 0.0), ev(1.0, 1.0)]).unwrap();
        assert_eq!(proper_time(&c), 0.0);
        let c = CausalCurve::new(vec![ev(0.0, 0.0), ev(2.0, 0.0)]).unwrap();
        assert_eq!(proper_time(&c), 2.0);
    }

    #[test]
    fn curve_rejects_spacelike_and_past_segments() {
        assert!(matches!(
            CausalCurve::new(vec![ev(0.0, 0.0), ev(1.0, 2.0)]),
            Err(Error::InvalidCurve { index: 0, .. })
        ));
        assert!(CausalCurve::new(vec![ev(0.0, 0.0), ev(1.0, 0.0), ev(0.5, 0.0)]).is_err());
        assert!(matches!(CausalCurve::new(vec![ev(0.0, 0.0)]), Err(Error::CurveTooShort(1))));
        // repeated vertex is a permitted degenerate segment
        assert!(CausalCurve::new(vec![ev(0.0, 0.0), ev(0.0, 0.0), ev(1.0, 0.0)]).is_ok());
        assert!(EventPoint::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn weighted_examples() {
        let c = CausalCurve::new(vec![ev(0.0, 0.0), ev(2.0, 0.0)]).unwrap();
        let one = ScalarField::constant(Complex64::new(1.0, 0.0));
        assert!((weighted_proper_time(&c, &one).unwrap() - 2.0).abs() < 1e-14);
        let lin = ScalarField::Affine { c0: 0.0, ct: 1.0, cx: 0.0 };
        // ∫₀² t dt = 2
        assert!((weighted_proper_time(&c, &lin).unwrap() - 2.0).abs() < 1e-8);
        let k = ScalarField::constant(Complex64::new(0.0, -2.5));
        let c = CausalCurve::new(vec![ev(0.0, 0.0), ev(1.0, 0.5), ev(3.0, 0.0)]).unwrap();
        let got = weighted_proper_time(&c, &k).unwrap();
        assert!((got - 2.5 * c.proper_time()).abs() < 1e-13);
    }

    #[test]
    fn grid_field_interpolates_and_rejects_outside() {
        let g = GridField::new(
            vec![0.0, 1.0],
            vec![0.0, 2.0],
            vec![vec![0.0, 2.0], vec![1.0, 3.0]],
        )
        .unwrap();
        assert!((g.eval(0.5, 1.0).unwrap() - 1.5).abs() < 1e-15);
        assert!((g.eval(1.0, 2.0).unwrap() - 3.0).abs() < 1e-15);
        assert!(g.eval(1.5, 0.0).is_err());
        assert!(GridField::new(vec![0.0, 0.0], vec![0.0, 1.0], vec![vec![0.0; 2]; 2]).is_err());
        assert!(GridField::new(vec![0.0, 1.0], vec![0.0, 1.0], vec![vec![0.0; 2]; 3]).is_err());
    }

    #[test]
    fn scalar_field_json_forms() {
        let f: ScalarField = serde_json::from_str(r#"{"kind":"constant","re":2}"#).unwrap();
        assert_eq!(f.magnitude(0.0, 0.0).unwrap(), 2.0);
        let g: ScalarField = serde_json::from_str(
            r#"{"kind":"grid","t":[0,1],"x":[0,1],"values":[[1,1],[1,1]]}"#,
        )
        .unwrap();
        assert_eq!(g.magnitude(0.5, 0.5).unwrap(), 1.0);
        let bad = serde_json::from_str::<ScalarField>(
            r#"{"kind":"grid","t":[1,0],"x":[0,1],"values":[[1,1],[1,1]]}"#,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn maximizer_examples() {
        let one = ScalarField::constant(Complex64::new(1.0, 0.0));
        let three = ScalarField::constant(Complex64::new(3.0, 0.0));
        for segments in [1, 2, 5, 9] {
            let cfg = SearchConfig { segments, budget: 300, ..Default::default() };
            let r = maximize_weighted_proper_time(ev(0.0, 0.0), ev(2.0, 0.0), &one, &cfg).unwrap();
            assert!((r.value - 2.0).abs() < 1e-6, "{segments}: {}", r.value);
            let r = maximize_weighted_proper_time(ev(0.0, 0.0), ev(2.0, 0.0), &three, &cfg).unwrap();
            assert!((r.value - 6.0).abs() < 3e-6);
            let r = maximize_weighted_proper_time(ev(0.0, 0.0), ev(1.0, 1.0), &one, &cfg).unwrap();
            assert!(r.value.abs() < 1e-6);
        }
        assert_eq!(
            maximize_weighted_proper_time(ev(0.0, 0.0), ev(1.0, 2.0), &one, &SearchConfig::default())
                .unwrap_err(),
            Error::NotCausallyRelated
        );
    }

    #[test]
    fn maximizer_bends_toward_heavier_weight() {
        // A bump off the straight line rewards a detour.
        let bump = ScalarField::Gaussian {
            baseline: 1.0,
            amplitude: 4.0,
            t0: 2.0,
            x0: 0.8,
            width: 0.5,
        };
        let cfg = SearchConfig { segments: 6, budget: 3000, seed: 7, ..Default::default() };
        let r = maximize_weighted_proper_time(ev(0.0, 0.0), ev(4.0, 0.0), &bump, &cfg).unwrap();
        assert!(r.value > r.straight + 1e-3, "{} vs {}", r.value, r.straight);
        assert!(r.accepted > 0);
        assert!(r.curve.vertices().windows(2).all(|w| segment_ok(w[0], w[1])));
    }

    #[test]
    fn grid_field_outside_domain_is_an_error() {
        let g = ScalarField::Grid(
            GridField::new(vec![0.0, 1.0], vec![-1.0, 1.0], vec![vec![1.0; 2]; 2]).unwrap(),
        );
        let c = CausalCurve::new(vec![ev(0.0, 0.0), ev(2.0, 0.0)]).unwrap();
        assert!(matches!(weighted_proper_time(&c, &g), Err(Error::FieldEvaluation { .. })));
    }

    #[test]
    fn unit_system_validation() {
        assert!(UnitSystem::new(0.0, 1.0).is_err());
        assert!(UnitSystem::new(1.0, -1.0).is_err());
        assert!(UnitSystem::SI.validate().is_ok());
    }
}
