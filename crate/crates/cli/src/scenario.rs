//! Scenario files: one model, its parameters, and a list of state pairs.
//!
//! Parsing happens in two passes. The `model` field is read first, then the
//! whole document is deserialized into the model's own shape so that schema
//! errors carry a JSON path. Every state is then built into its core type,
//! with the path of the offending field on failure.

use std::collections::HashSet;
use std::path::Path;

use ncc_core::{
    Complex64, FiniteDiracM2, FiniteDiracTwoSheet, GeneralizedCoherentState, MoyalParams,
    ProductStateM2, ScalarField, SheetState,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, Result};

/// Identifier of the scenario format this build understands.
pub const SCHEMA_ID: &str = "urn:ncc:scenario:v1";

pub const DEFAULT_TRUNCATION: usize = 64;

/// Numeric knobs shared by every model. Absent values fall back to the
/// per-command defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub tol: Option<f64>,
    pub truncation: Option<usize>,
    pub segments: Option<usize>,
    pub budget: Option<usize>,
    pub seed: Option<u64>,
}

impl Options {
    /// Values set in `overrides` win.
    pub fn merged(self, overrides: Options) -> Options {
        Options {
            tol: overrides.tol.or(self.tol),
            truncation: overrides.truncation.or(self.truncation),
            segments: overrides.segments.or(self.segments),
            budget: overrides.budget.or(self.budget),
            seed: overrides.seed.or(self.seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pair<S> {
    pub id: String,
    pub from: S,
    pub to: S,
}

#[derive(Debug, Clone)]
pub enum TwoSheetField {
    Dirac(FiniteDiracTwoSheet),
    Higgs(ScalarField),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MoyalState {
    Coherent(Complex64),
    Generalized(GeneralizedCoherentState),
}

impl MoyalState {
    pub fn kappa(&self) -> Complex64 {
        match self {
            MoyalState::Coherent(k) => *k,
            MoyalState::Generalized(g) => g.kappa,
        }
    }

    pub fn level(&self) -> usize {
        match self {
            MoyalState::Coherent(_) => 0,
            MoyalState::Generalized(g) => g.level,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Model {
    M2 { dirac: FiniteDiracM2, pairs: Vec<Pair<ProductStateM2>> },
    TwoSheet { field: TwoSheetField, pairs: Vec<Pair<SheetState>> },
    Moyal { params: MoyalParams, pairs: Vec<Pair<MoyalState>> },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::M2 { .. } => "m2",
            Model::TwoSheet { .. } => "two_sheet",
            Model::Moyal { .. } => "moyal",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Model::M2 { pairs, .. } => pairs.len(),
            Model::TwoSheet { pairs, .. } => pairs.len(),
            Model::Moyal { pairs, .. } => pairs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: Model,
    pub options: Options,
    /// Fields accepted for compatibility but not used by any predicate.
    pub ignored: Vec<String>,
}

// ---- raw document shapes ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawM2 {
    #[serde(rename = "$schema")]
    _schema: Option<String>,
    #[serde(rename = "model")]
    _model: String,
    #[serde(default)]
    options: Options,
    dirac: RawM2Dirac,
    pairs: Vec<RawPair<RawM2State>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawM2Dirac {
    d1: f64,
    d2: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawM2State {
    t: f64,
    x: f64,
    latitude: f64,
    azimuth: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwoSheet {
    #[serde(rename = "$schema")]
    _schema: Option<String>,
    #[serde(rename = "model")]
    _model: String,
    #[serde(default)]
    options: Options,
    dirac: Option<RawSheetDirac>,
    higgs: Option<ScalarField>,
    #[serde(rename = "A")]
    gauge: Option<Value>,
    pairs: Vec<RawPair<RawSheetState>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSheetDirac {
    m_re: f64,
    #[serde(default)]
    m_im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSheetState {
    t: f64,
    x: f64,
    sheet: ncc_core::Sheet,
    #[serde(rename = "A")]
    gauge: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMoyal {
    #[serde(rename = "$schema")]
    _schema: Option<String>,
    #[serde(rename = "model")]
    _model: String,
    #[serde(default)]
    options: Options,
    params: RawMoyalParams,
    pairs: Vec<RawPair<RawMoyalState>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMoyalParams {
    theta: f64,
    truncation: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMoyalState {
    kind: MoyalKind,
    level: Option<usize>,
    kappa_re: f64,
    kappa_im: f64,
}

#[derive(Deserialize, Clone, Copy, PartialEq)]
#[serde(rename_all = "snake_case")]
enum MoyalKind {
    Coherent,
    Generalized,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair<S> {
    id: String,
    from: S,
    to: S,
}

fn typed<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::schema(path, e.into_inner())
    })
}

fn check_ids<S>(pairs: &[RawPair<S>]) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, p) in pairs.iter().enumerate() {
        if !seen.insert(p.id.as_str()) {
            return Err(CliError::schema(format!("pairs[{i}].id"), format!("duplicate id `{}`", p.id)));
        }
    }
    Ok(())
}

fn build_pairs<R, S>(
    raw: Vec<RawPair<R>>,
    mut build: impl FnMut(R, &str) -> Result<S>,
) -> Result<Vec<Pair<S>>> {
    check_ids(&raw)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, p)| {
            Ok(Pair {
                id: p.id,
                from: build(p.from, &format!("pairs[{i}].from"))?,
                to: build(p.to, &format!("pairs[{i}].to"))?,
            })
        })
        .collect()
}

impl Scenario {
    /// Applies `overrides` (typically command-line flags) over the file's own
    /// options; a truncation override also resizes the Moyal model.
    pub fn from_value(value: Value, overrides: Options) -> Result<Scenario> {
        let Value::Object(map) = &value else {
            return Err(CliError::schema(".", "scenario must be a JSON object"));
        };
        if let Some(id) = map.get("$schema") {
            if id.as_str() != Some(SCHEMA_ID) {
                return Err(CliError::schema("$schema", format!("expected `{SCHEMA_ID}`, found {id}")));
            }
        }
        let model = match map.get("model") {
            Some(Value::String(s)) => s.clone(),
            Some(other) => return Err(CliError::schema("model", format!("expected a string, found {other}"))),
            None => return Err(CliError::schema("model", "missing field `model`")),
        };
        let mut ignored = Vec::new();
        let (model, options) = match model.as_str() {
            "m2" => {
                let raw: RawM2 = typed(value)?;
                let dirac = FiniteDiracM2::new(raw.dirac.d1, raw.dirac.d2)
                    .map_err(|e| CliError::schema("dirac", e))?;
                let pairs = build_pairs(raw.pairs, |s, path| {
                    ProductStateM2::new(s.t, s.x, s.latitude, s.azimuth).map_err(|e| CliError::schema(path, e))
                })?;
                (Model::M2 { dirac, pairs }, raw.options)
            }
            "two_sheet" => {
                let raw: RawTwoSheet = typed(value)?;
                if raw.gauge.is_some() {
                    ignored.push("A".to_string());
                }
                let field = match (raw.dirac, raw.higgs) {
                    (Some(d), None) => TwoSheetField::Dirac(
                        FiniteDiracTwoSheet::new(Complex64::new(d.m_re, d.m_im))
                            .map_err(|e| CliError::schema("dirac", e))?,
                    ),
                    (None, Some(h)) => TwoSheetField::Higgs(h),
                    _ => return Err(CliError::schema(".", "exactly one of `dirac` and `higgs` is required")),
                };
                let pairs = build_pairs(raw.pairs, |s, path| {
                    if s.gauge.is_some() {
                        ignored.push(format!("{path}.A"));
                    }
                    SheetState::new(s.t, s.x, s.sheet).map_err(|e| CliError::schema(path, e))
                })?;
                (Model::TwoSheet { field, pairs }, raw.options)
            }
            "moyal" => {
                let raw: RawMoyal = typed(value)?;
                let options = raw.options.merged(overrides);
                let truncation = options.truncation.or(raw.params.truncation).unwrap_or(DEFAULT_TRUNCATION);
                let params = MoyalParams::new(raw.params.theta, truncation)
                    .map_err(|e| CliError::schema("params", e))?;
                let pairs = build_pairs(raw.pairs, |s, path| {
                    let kappa = Complex64::new(s.kappa_re, s.kappa_im);
                    if !(kappa.re.is_finite() && kappa.im.is_finite()) {
                        return Err(CliError::schema(path, "kappa must be finite"));
                    }
                    match (s.kind, s.level) {
                        (MoyalKind::Coherent, None | Some(0)) => Ok(MoyalState::Coherent(kappa)),
                        (MoyalKind::Coherent, Some(_)) => {
                            Err(CliError::schema(format!("{path}.level"), "coherent states sit at level 0"))
                        }
                        (MoyalKind::Generalized, Some(level)) => GeneralizedCoherentState::new(level, kappa, params)
                            .map(MoyalState::Generalized)
                            .map_err(|e| CliError::schema(format!("{path}.level"), e)),
                        (MoyalKind::Generalized, None) => {
                            Err(CliError::schema(format!("{path}.level"), "missing field `level`"))
                        }
                    }
                })?;
                let options = Options { truncation: Some(truncation), ..options };
                return Ok(Scenario { model: Model::Moyal { params, pairs }, options, ignored });
            }
            other => {
                return Err(CliError::schema(
                    "model",
                    format!("unknown model `{other}`, expected one of m2, two_sheet, moyal"),
                ))
            }
        };
        Ok(Scenario { model, options: options.merged(overrides), ignored })
    }

    pub fn from_str(text: &str, overrides: Options) -> Result<Scenario> {
        let mut de = serde_json::Deserializer::from_str(text);
        let value: Value = serde_path_to_error::deserialize(&mut de)
            .map_err(|e| CliError::schema(e.path().to_string(), e.into_inner()))?;
        Scenario::from_value(value, overrides)
    }

    pub fn load(path: &Path, overrides: Options) -> Result<Scenario> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Scenario::from_str(&text, overrides)
    }
}
