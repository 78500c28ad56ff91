use thiserror::Error;

use crate::spectral::ModeClass;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid quadratic form: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `R·T` has eigenvalues off the real axis; no real Bogolyubov
    /// transformation diagonalizes the form.
    #[error("NonRealSpectrum: eigenvalue of RT with imaginary part {max_imag:e}")]
    NonRealSpectrum { max_imag: f64 },

    /// `R·T` has a nontrivial Jordan cell (numerically).
    #[error("DefectiveMatrix: {reason}")]
    DefectiveMatrix { reason: String },

    #[error("ContinuousSpectrum: modes {classes:?}")]
    ContinuousSpectrum { classes: Vec<ModeClass> },

    #[error("NonDiscreteMode: {0:?}")]
    NonDiscreteMode(ModeClass),

    #[error("DegeneratePoint: |det| = {det:e} at {label}")]
    DegeneratePoint { label: String, det: f64 },

    #[error("resource guard: dimension {dim} exceeds limit {limit}")]
    Resource { dim: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("iterative eigensolver did not converge: {0}")]
    NoConvergence(String),

    /// Unreadable or malformed input file.
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable name used in CLI payloads.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Validation(_) => "Validation",
            Error::Precondition(_) => "Precondition",
            Error::NonRealSpectrum { .. } => "NonRealSpectrum",
            Error::DefectiveMatrix { .. } => "DefectiveMatrix",
            Error::ContinuousSpectrum { .. } => "ContinuousSpectrum",
            Error::NonDiscreteMode(_) => "NonDiscreteMode",
            Error::DegeneratePoint { .. } => "DegeneratePoint",
            Error::Resource { .. } => "Resource",
            Error::Unsupported(_) => "Unsupported",
            Error::NoConvergence(_) => "NoConvergence",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
