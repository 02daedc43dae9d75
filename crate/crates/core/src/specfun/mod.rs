//! Special-function kernel: log-gamma and friends, the Gauss hypergeometric
//! function on the real line, Mittag-Leffler and Prabhakar functions, and
//! the incomplete-beta type function `F` of the generating-function
//! closed form together with its compositional inverse.
//!
//! Every evaluator returns a [`SeriesEval`] carrying an error estimate, so
//! callers can decide whether a result is good enough for their purpose.

mod ffun;
mod gamma;
mod hyp2f1;
mod mittag_leffler;

use serde::Serialize;

pub use ffun::{f_derivative, f_eval, f_eval_with, f_inverse, f_regimes, inverse_small_y_asymptote, FMethod, FRegimes};
pub use gamma::{digamma, gamma_ln, ln_pochhammer, pochhammer_over_factorial};
pub use hyp2f1::{hyp2f1, hyp2f1_series};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler2, prabhakar, prabhakar_asymptote_ln, prabhakar_corrections, prabhakar_ln_series,
    prabhakar_with,
    EvalMode, LogEval, SeriesConfig,
};

pub(crate) use ffun::ln_rho_root;
pub(crate) use gamma::ln_gamma;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Asymptotic,
    Quadrature,
    Hybrid,
}

/// A value with an absolute error estimate and bookkeeping about how it was derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEval {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub method: Method,
}

impl SeriesEval {
    pub(crate) fn new(value: f64, abs_error_estimate: f64, terms_used: usize, method: Method) -> Self {
        SeriesEval {
            value,
            abs_error_estimate: abs_error_estimate.max(0.0),
            terms_used: terms_used.max(1),
            method,
        }
    }

    pub fn rel_error_estimate(&self) -> f64 {
        if self.value == 0.0 {
            self.abs_error_estimate
        } else {
            self.abs_error_estimate / self.value.abs()
        }
    }
}
