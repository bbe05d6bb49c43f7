//! Crate-wide error type.

use num_complex::Complex64;

/// Errors shared by every module. Variants carry enough context to be
/// actionable from the CLI without a backtrace.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Evaluation requested exactly at a pole of the function.
    #[error("pole of {what} at {at}")]
    Pole { what: &'static str, at: Complex64 },

    /// An iterative or series computation failed to reach its target
    /// accuracy within its budget.
    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    /// Argument outside the domain of the operation.
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// Maass–Selberg closed form evaluated where a denominator degenerates.
    #[error("degenerate Maass-Selberg denominator: {detail}")]
    DegenerateEigenvalue { detail: String },

    /// Spectral parameter of the requested solution collides with an
    /// eigenvalue appearing in the expansion.
    #[error("spectral parameter w = {w} collides with eigenvalue {lambda}")]
    EigenvalueCollision { w: Complex64, lambda: Complex64 },

    /// The pair (a,b) sits on a regime boundary with no vanishing
    /// scattering witness, so no subtraction plan yields an L2 remainder.
    #[error("boundary pair is not solvable: {detail}")]
    UnsolvableBoundary { detail: String },

    /// Cusp-form record does not carry enough coefficients for the
    /// requested accuracy.
    #[error("insufficient cusp-form coefficients: need {needed}, have {have}")]
    InsufficientCoefficients { needed: usize, have: usize },

    /// Cusp-form data file could not be parsed.
    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    /// Cusp-form record parsed but failed validation.
    #[error("validation error for record {record}: {detail}")]
    Validation { record: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
