use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the routine is defined.
    #[error("domain error in {routine}: {detail}")]
    Domain {
        routine: &'static str,
        detail: String,
    },

    /// A series or iteration did not reach its tolerance within the term budget.
    #[error("{routine} did not converge after {terms} terms (last error estimate {estimate:e})")]
    NonConvergence {
        routine: &'static str,
        terms: usize,
        estimate: f64,
    },

    /// Alternating series whose cancellation exceeds what the working precision can resolve.
    #[error(
        "{routine}: cancellation loses {lost_digits:.1} digits, relative error bound {bound:e}; \
         use the high-precision mode with at least {needed_digits} digits"
    )]
    PrecisionLoss {
        routine: &'static str,
        lost_digits: f64,
        bound: f64,
        needed_digits: u32,
    },

    /// Floating-point overflow of a quantity that must be returned unscaled.
    #[error("{routine}: result overflows (log magnitude {log_magnitude})")]
    Overflow {
        routine: &'static str,
        log_magnitude: f64,
    },

    /// Root bracketing failed, which indicates a bug in the function being inverted.
    #[error("{routine}: could not bracket a root ({detail})")]
    Bracketing {
        routine: &'static str,
        detail: String,
    },

    /// Two evaluation routes for the same quantity disagree.
    #[error("{routine}: evaluation routes disagree by {difference:e} (> {tolerance:e})")]
    Inconsistent {
        routine: &'static str,
        difference: f64,
        tolerance: f64,
    },

    /// A Monte Carlo request above the configured work budget.
    #[error("simulation budget exceeded: {requested} steps requested, budget {budget}")]
    Budget { requested: u128, budget: u128 },

    #[error("high-precision mode is not available: built without the `high-precision` feature")]
    HighPrecisionUnavailable,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(routine: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        routine,
        detail: detail.into(),
    }
}

pub(crate) fn ensure_finite(routine: &'static str, name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(domain(routine, format!("{name} = {value} is not finite")))
    }
}
