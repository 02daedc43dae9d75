//! Closed-form generating functions of the moment sequence, residual checks
//! of the equations they satisfy, the exponential generating function `Ψ`
//! with the tilted functionals `ω, ξ, η`, and the density-tail asymptotes of
//! the limit law.

mod genfun;
mod mgf;
mod residuals;
mod tails;

use serde::Serialize;

pub use genfun::{genfun, genfun_series, GenFunValue};
pub use mgf::{eta_asymptote, psi_mgf, MgfEvaluator, MgfValue, NEGATIVE_CAP};
pub use residuals::{residuals, residuals_with_steps, Residuals, StepRule};
pub use tails::{
    tail, tail_asymptote, tail_ln, tail_ratio_asymptote, tail_ratio_printed_ln, TailAsymptote, TailKind,
};

/// Which half-line an asymptote refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}
