//! Global model parameters.

use crate::error::{Error, Result};

/// Parameters of the resonant atom-field model and of the numerical
/// Fock-space truncation.
///
/// All dynamics is computed in the scaled time τ = λt, so `lambda` only
/// matters when labelling output in physical units. `n_max` is the hard cap
/// on the Fock truncation: state constructors expand the basis until the
/// truncated tail probability drops below `eps_tail` and fail if that would
/// require more than `n_max` levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Atom-field dipole coupling constant (rad per unit time), > 0.
    pub lambda: f64,
    /// Hard cap on the Fock truncation index, ≥ 1.
    pub n_max: usize,
    /// Tail tolerance for truncation, in (0, 1e-6].
    pub eps_tail: f64,
}

impl ModelParams {
    pub fn new(lambda: f64, n_max: usize, eps_tail: f64) -> Result<Self> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::Params(format!("coupling must be positive, got {lambda}")));
        }
        if n_max < 1 {
            return Err(Error::Params("truncation cap must be at least 1".into()));
        }
        if !(eps_tail > 0.0 && eps_tail <= 1e-6) {
            return Err(Error::Params(format!(
                "tail tolerance must lie in (0, 1e-6], got {eps_tail}"
            )));
        }
        Ok(Self { lambda, n_max, eps_tail })
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        Self { lambda: 1.0, n_max: 4096, eps_tail: 1e-12 }
    }
}
