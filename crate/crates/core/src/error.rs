//! Error type shared by all numerical routines.

use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum CasimirError {
    /// Input outside the physical or mathematical domain of an operation.
    #[error("domain error in {context}: {message}")]
    Domain { context: &'static str, message: String },

    /// An adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature for {context} did not converge: requested {requested:.3e}, achieved {achieved:.3e} after {evaluations} evaluations")]
    Quadrature {
        context: &'static str,
        requested: f64,
        achieved: f64,
        evaluations: usize,
    },

    /// A series was truncated at its hard cap before the tail bound converged.
    #[error("series for {context} hit the cap of {cap} terms (partial sum {partial:.6e}, tail bound {tail:.3e})")]
    SeriesCap {
        context: &'static str,
        cap: usize,
        partial: f64,
        tail: f64,
    },

    /// A difference of large quantities fell below the achievable resolution.
    #[error("precision loss in {context}: result {value:.3e} is below the resolution {resolution:.3e}")]
    PrecisionLoss {
        context: &'static str,
        value: f64,
        resolution: f64,
    },

    /// Invalid solver configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, CasimirError>;
