use ncc_core::{CausalVerdict, Complex64, ENGINE_VERSION};
use serde::{Serialize, Serializer};

use crate::scenario::SCHEMA_ID;

/// A verdict as written to result files: plain booleans for the closed
/// predicates, labels for the three-valued ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Related(bool),
    Graded(CausalVerdict),
}

impl Verdict {
    pub fn is_undetermined(&self) -> bool {
        matches!(self, Verdict::Graded(v) if v.is_undetermined())
    }

    /// `None` when the verdict is undetermined.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Related(b) => Some(*b),
            Verdict::Graded(CausalVerdict::Causal) => Some(true),
            Verdict::Graded(CausalVerdict::NotCausal) => Some(false),
            Verdict::Graded(CausalVerdict::Undetermined(_)) => None,
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Related(b) => s.serialize_bool(*b),
            Verdict::Graded(v) => s.serialize_str(v.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub engine_version: &'static str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

impl Provenance {
    pub fn new(seed: u64, truncation: Option<usize>) -> Self {
        Self { engine_version: ENGINE_VERSION, seed, truncation }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Displacement {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Displacement {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessDump {
    /// Row-major `[re, im]` entries of the witness coefficient matrix.
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub lambda_max: f64,
    pub spectrum: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyFields {
    pub closed_form: Verdict,
    /// `witness` or `no_witness`.
    pub operator: &'static str,
    /// Absent when the closed form is undetermined.
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDump>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRecord {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weighted_tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub displacement: Option<Displacement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyFields>,
    pub provenance: Provenance,
}

impl ResultRecord {
    pub fn new(id: impl Into<String>, verdict: Verdict, provenance: Provenance) -> Self {
        Self {
            id: id.into(),
            verdict,
            reason: None,
            distance: None,
            bound: None,
            weighted_tau: None,
            displacement: None,
            margin: None,
            verify: None,
            provenance,
        }
    }
}

/// First line of every result file; the only line that varies between runs
/// of the same scenario and seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Header {
    pub kind: &'static str,
    pub command: &'static str,
    pub model: &'static str,
    pub schema: &'static str,
    pub engine_version: &'static str,
    pub records: usize,
    pub created_unix_ms: u128,
}

impl Header {
    pub fn now(command: &'static str, model: &'static str, records: usize) -> Self {
        let created_unix_ms = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        Self {
            kind: "header",
            command,
            model,
            schema: SCHEMA_ID,
            engine_version: ENGINE_VERSION,
            records,
            created_unix_ms,
        }
    }
}

/// Header line followed by one line per record.
pub fn to_json_lines(header: &Header, records: &[ResultRecord]) -> String {
    let mut out = serde_json::to_string(header).expect("header serializes");
    out.push('\n');
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}
