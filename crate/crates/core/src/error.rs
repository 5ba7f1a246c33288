use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the solvers and their substrate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NestError {
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,

    #[error("gamma function pole at {0}")]
    Pole(Complex64),

    #[error("invalid radical index {num}/{den}")]
    InvalidIndex { num: i64, den: i64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("outside domain: {0}")]
    OutsideDomain(String),

    #[error("degenerate coefficient: {0}")]
    DegenerateCoefficient(String),

    #[error("reduction failed: {reason} (best residual {best_residual:e})")]
    ReductionFailed { reason: String, best_residual: f64 },

    #[error("ambiguous root: {} candidates tie", candidates.len())]
    AmbiguousRoot { candidates: Vec<Complex64> },

    #[error("ambiguous preimage: {} candidates tie", candidates.len())]
    AmbiguousPreimage { candidates: Vec<Complex64> },

    #[error("root finder did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, NestError>;

impl NestError {
    /// The variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::ZeroToNegativePower => "ZeroToNegativePower",
            Self::Pole(_) => "Pole",
            Self::InvalidIndex { .. } => "InvalidIndex",
            Self::InvalidInput(_) => "InvalidInput",
            Self::OutsideDomain(_) => "OutsideDomain",
            Self::DegenerateCoefficient(_) => "DegenerateCoefficient",
            Self::ReductionFailed { .. } => "ReductionFailed",
            Self::AmbiguousRoot { .. } => "AmbiguousRoot",
            Self::AmbiguousPreimage { .. } => "AmbiguousPreimage",
            Self::NoConvergence { .. } => "NoConvergence",
            Self::Domain(_) => "Domain",
        }
    }
}
