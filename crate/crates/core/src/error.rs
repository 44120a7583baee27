//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid model parameters.
    #[error("invalid parameters: {0}")]
    Params(String),

    /// The Fock-space truncation needed to reach the requested tail
    /// tolerance exceeds the configured hard cap.
    #[error("truncation failure: more than {cap} Fock levels required (mean photon number {mean_n:.3})")]
    Truncation { cap: usize, mean_n: f64 },

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error("quadrature did not converge: achieved error estimate {achieved:.3e} exceeds tolerance {tol:.3e}")]
    Quadrature { achieved: f64, tol: f64 },

    /// The sampled phase profile cannot be unwrapped into a smooth branch.
    #[error("phase unwrap failure: {0}")]
    Unwrap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
