use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of a causality check whose answer may be limited by truncation
/// or by the strength of the known sufficient conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum CausalVerdict {
    Causal,
    NotCausal,
    Undetermined(String),
}

impl CausalVerdict {
    pub fn is_causal(&self) -> bool {
        matches!(self, CausalVerdict::Causal)
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self, CausalVerdict::Undetermined(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            CausalVerdict::Causal => "Causal",
            CausalVerdict::NotCausal => "NotCausal",
            CausalVerdict::Undetermined(_) => "Undetermined",
        }
    }
}

impl fmt::Display for CausalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CausalVerdict::Undetermined(reason) => write!(f, "Undetermined({reason})"),
            other => f.write_str(other.label()),
        }
    }
}
