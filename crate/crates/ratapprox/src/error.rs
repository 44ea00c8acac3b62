use thiserror::Error;

/// Errors raised by construction, evaluation and parsing routines.
///
/// Numeric payloads are stored as `f64` so the error type stays independent of
/// the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the supported cap of {cap}")]
    DegreeOverCap { degree: usize, cap: usize },

    #[error("target evaluation failed at x = {x}: {reason}")]
    Evaluation { x: f64, reason: String },

    #[error("domain error in {function} at x = {x}")]
    Domain { function: String, x: f64 },

    #[error("result overflows the floating-point range")]
    Overflow,

    #[error("matrix is singular at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("the ({m},{n}) Pade system is degenerate")]
    DegeneratePade { m: usize, n: usize },

    #[error("construction failed: {detail}")]
    ConstructionFailure { detail: String, condition: Option<f64> },

    #[error("no nonlinear Pade-Chebyshev approximant of degree ({m},{n}) exists for this series")]
    Nonexistence { m: usize, n: usize },

    #[error("Remez iteration diverged after {cycles} cycles (last deviation {lambda:e})")]
    Divergence { cycles: usize, lambda: f64, critical_points: Vec<f64> },

    #[error("insufficient alternation: found {found} alternating extrema, need {required}")]
    InsufficientAlternation { found: usize, required: usize },

    #[error("denominator vanishes at {} checkpoint(s), first at x = {}", locations.len(), locations.first().copied().unwrap_or(f64::NAN))]
    Pole { locations: Vec<f64> },

    #[error("continued-fraction conversion breaks down: {0}")]
    ConversionBreakdown(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
