use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),

    #[error("invalid curve: segment {index} from {from:?} to {to:?} is not future-directed causal")]
    InvalidCurve {
        index: usize,
        from: (f64, f64),
        to: (f64, f64),
    },

    #[error("curve needs at least two vertices, got {0}")]
    CurveTooShort(usize),

    #[error("events are not causally related")]
    NotCausallyRelated,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("scalar field evaluation failed at (t={t}, x={x}): {reason}")]
    FieldEvaluation { t: f64, x: f64, reason: String },

    #[error("degenerate finite Dirac operator: {0}")]
    DegenerateDirac(String),

    #[error("index ({m}, {n}) outside truncation {truncation}")]
    IndexOutOfRange { m: usize, n: usize, truncation: usize },

    #[error("Moyal parameters differ between operands")]
    ParamsMismatch,

    #[error("truncation {truncation} too small: probability leakage {leakage:e} exceeds {limit:e}")]
    TruncationInsufficient {
        truncation: usize,
        leakage: f64,
        limit: f64,
    },

    #[error("state vector not normalized: 2πθ‖ψ‖² = {0}")]
    NotNormalized(f64),

    #[error("element is not self-adjoint (max deviation {0:e})")]
    NotSelfAdjoint(f64),

    #[error("eigen decomposition failed: {0}")]
    Numerical(String),
}
