//! Mittag-Leffler `E_α`, two-parameter `E_{α,β}` and Prabhakar `E^γ_{α,β}`
//! functions of a real argument.
//!
//! The entire series is summed directly while `z^{1/α}` is moderate. For
//! large positive `z` the leading exponential asymptote takes over. Negative
//! arguments give alternating series whose cancellation grows like
//! `exp(|z|^{1/α})`; those are summed with compensation and refused once the
//! rounding bound exceeds the configured budget.

use serde::Serialize;

use super::gamma::{ln_gamma, pochhammer_over_factorial};
use super::{Method, SeriesEval};
use crate::error::{domain, ensure_finite, Error, Result};
use crate::numeric::{CompensatedSum, LogSum};

/// Tunables shared by the series evaluators.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    pub max_terms: usize,
    /// Stop once a term is below `rel_tol` times the running sum.
    pub rel_tol: f64,
    /// Positive arguments with `z^{1/α}` above this use the asymptote.
    pub asymptotic_threshold: f64,
    /// Largest admissible relative rounding bound for alternating sums.
    pub cancellation_budget: f64,
    /// Largest `|z|` accepted for negative arguments in double precision.
    pub negative_cap: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            max_terms: 10_000,
            rel_tol: 1e-17,
            asymptotic_threshold: 35.0,
            cancellation_budget: 1e-6,
            negative_cap: 30.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Auto,
    Series,
    Asymptotic,
}

/// A positive value carried by its logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogEval {
    pub ln_value: f64,
    pub rel_error_estimate: f64,
    pub terms_used: usize,
    pub method: Method,
}

/// Classical Mittag-Leffler function `E_α(z) = Σ z^n / Γ(1 + αn)`, `α ∈ (0, 1]`.
pub fn mittag_leffler(alpha: f64, z: f64) -> Result<SeriesEval> {
    ensure_finite("mittag_leffler", "z", z)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain("mittag_leffler", format!("alpha = {alpha} not in (0, 1]")));
    }
    let cfg = SeriesConfig::default();
    if z > 0.0 && z.powf(1.0 / alpha) > cfg.asymptotic_threshold {
        // E_α(z) = e^{z^{1/α}}/α - Σ_k z^{-k}/Γ(1-αk); the first neglected
        // algebraic term sets the error.
        let big = z.powf(1.0 / alpha);
        check_range("mittag_leffler", big - alpha.ln())?;
        let value = big.exp() / alpha;
        let algebraic = if alpha < 1.0 {
            (-ln_gamma(1.0 - alpha)).exp() / z
        } else {
            0.0
        };
        let err = algebraic + 4.0 * f64::EPSILON * big * value;
        return Ok(SeriesEval::new(value, err, 1, Method::Asymptotic));
    }
    sum_series("mittag_leffler", z, &cfg, |n, ln_abs_z| {
        let lg = ln_gamma(1.0 + alpha * n as f64);
        (n as f64 * ln_abs_z - lg, lg.abs())
    })
}

/// Two-parameter Mittag-Leffler function `E_{α,β}(z) = Σ z^n / Γ(β + αn)`.
pub fn mittag_leffler2(alpha: f64, beta: f64, z: f64) -> Result<SeriesEval> {
    ensure_finite("mittag_leffler2", "z", z)?;
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(domain("mittag_leffler2", format!("alpha = {alpha}, beta = {beta} must be > 0")));
    }
    let cfg = SeriesConfig::default();
    sum_series("mittag_leffler2", z, &cfg, |n, ln_abs_z| {
        let lg = ln_gamma(beta + alpha * n as f64);
        (n as f64 * ln_abs_z - lg, lg.abs())
    })
}

/// Prabhakar function `E^γ_{α,β}(z) = Σ (γ)_n z^n / (n! Γ(β + αn))` with default settings.
pub fn prabhakar(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<SeriesEval> {
    prabhakar_with(alpha, beta, gamma, z, EvalMode::Auto, &SeriesConfig::default())
}

fn check_prabhakar(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<()> {
    ensure_finite("prabhakar", "z", z)?;
    if !(alpha > 0.0 && beta > 0.0 && gamma > 0.0) {
        return Err(domain(
            "prabhakar",
            format!("alpha = {alpha}, beta = {beta}, gamma = {gamma} must all be > 0"),
        ));
    }
    Ok(())
}

fn prabhakar_ln_term(alpha: f64, beta: f64, gamma: f64, n: usize, ln_abs_z: f64) -> (f64, f64) {
    let nf = n as f64;
    let lg = ln_gamma(beta + alpha * nf);
    let lc = ln_pochhammer_over_factorial(gamma, n);
    (lc + nf * ln_abs_z - lg, lg.abs() + lc.abs())
}

pub fn prabhakar_with(
    alpha: f64,
    beta: f64,
    gamma: f64,
    z: f64,
    mode: EvalMode,
    cfg: &SeriesConfig,
) -> Result<SeriesEval> {
    check_prabhakar(alpha, beta, gamma, z)?;
    let use_asymptote = match mode {
        EvalMode::Asymptotic => true,
        EvalMode::Series => false,
        EvalMode::Auto => z > 0.0 && z.powf(1.0 / alpha) > cfg.asymptotic_threshold,
    };
    if use_asymptote {
        if z <= 0.0 {
            return Err(domain(
                "prabhakar",
                "the exponential asymptote only holds for large positive arguments; negative arguments decay like |z|^-γ",
            ));
        }
        let ln_v = prabhakar_asymptote_ln(alpha, beta, gamma, z);
        check_range("prabhakar", ln_v)?;
        let value = ln_v.exp();
        let w = z.powf(1.0 / alpha);
        let (c1, c2) = prabhakar_corrections(alpha, beta, gamma);
        let rel = c1.abs() / w + 2.0 * c2.abs() / (w * w) + 4.0 * f64::EPSILON * ln_v.abs().max(1.0);
        return Ok(SeriesEval::new(value, value * rel, 1, Method::Asymptotic));
    }
    sum_series("prabhakar", z, cfg, |n, ln_abs_z| prabhakar_ln_term(alpha, beta, gamma, n, ln_abs_z))
}

/// Refuses values beyond the double range; [`prabhakar_ln_series`] covers them.
fn check_range(routine: &'static str, ln_value: f64) -> Result<()> {
    if ln_value > f64::MAX.ln() {
        return Err(Error::Overflow {
            routine,
            log_magnitude: ln_value,
        });
    }
    Ok(())
}

/// `ln((γ)_n / n!)`; exactly zero for `γ = 1`.
fn ln_pochhammer_over_factorial(gamma: f64, n: usize) -> f64 {
    if n <= 64 {
        pochhammer_over_factorial(gamma, n as u64).ln()
    } else {
        ln_gamma(gamma + n as f64) - ln_gamma(gamma) - ln_gamma(n as f64 + 1.0)
    }
}

/// Logarithm of the leading large-`z` asymptote
/// `z^{(γ-β)/α} exp(z^{1/α}) / (α^γ Γ(γ))`.
pub fn prabhakar_asymptote_ln(alpha: f64, beta: f64, gamma: f64, z: f64) -> f64 {
    (gamma - beta) / alpha * z.ln() - gamma * alpha.ln() - ln_gamma(gamma) + z.powf(1.0 / alpha)
}

/// Coefficients `c₁, c₂` of the relative corrections `c₁/w + c₂/w²`,
/// `w = z^{1/α}`, to the leading asymptote.
///
/// With `t = w(1+u)` in the Hankel integral the integrand near the branch
/// point is `u^{-γ} (1 + h₁u + h₂u² + ..)`, and `u^{k-γ}` contributes
/// `Γ(γ)/Γ(γ-k) w^{-k}` relative to the leading term.
pub fn prabhakar_corrections(alpha: f64, beta: f64, gamma: f64) -> (f64, f64) {
    let big_a = alpha * gamma - beta;
    // ((1+u)^α - 1)/(αu) = 1 + p u + r u² + ..
    let p = (alpha - 1.0) / 2.0;
    let r = (alpha - 1.0) * (alpha - 2.0) / 6.0;
    let h1 = big_a - gamma * p;
    let h2 = big_a * (big_a - 1.0) / 2.0 - big_a * gamma * p - gamma * r + gamma * (gamma + 1.0) * p * p / 2.0;
    (h1 * (gamma - 1.0), h2 * (gamma - 1.0) * (gamma - 2.0))
}

/// Series for `E^γ_{α,β}(z)`, `z > 0`, summed in the log domain so that
/// arguments whose value overflows a double can still be evaluated.
pub fn prabhakar_ln_series(alpha: f64, beta: f64, gamma: f64, z: f64, max_terms: usize) -> Result<LogEval> {
    check_prabhakar(alpha, beta, gamma, z)?;
    if z <= 0.0 {
        return Err(domain("prabhakar_ln_series", format!("z = {z} must be > 0")));
    }
    let ln_z = z.ln();
    let mut acc = LogSum::new();
    let mut rounding = 0.0_f64;
    let mut prev = f64::NEG_INFINITY;
    for n in 0..max_terms {
        let (ln_t, mag) = prabhakar_ln_term(alpha, beta, gamma, n, ln_z);
        let ln_sum = acc.ln();
        if n > 0 && ln_t < prev && ln_t < ln_sum + (1e-17f64).ln() {
            let q = (ln_t - prev).exp();
            let tail = (ln_t - ln_sum).exp() / (1.0 - q);
            acc.add_ln(ln_t);
            return Ok(LogEval {
                ln_value: acc.ln(),
                rel_error_estimate: tail + rounding,
                terms_used: n + 1,
                method: Method::Series,
            });
        }
        acc.add_ln(ln_t);
        // Error of the exponentiated log term, weighted by its share of the sum.
        rounding = rounding.max(4.0 * f64::EPSILON * (1.0 + mag));
        prev = ln_t;
    }
    Err(Error::NonConvergence {
        routine: "prabhakar_ln_series",
        terms: max_terms,
        estimate: (prev - acc.ln()).exp(),
    })
}

/// Sums `Σ sign(z)^n exp(ln_term(n))`; `ln_term` returns the log magnitude
/// of the n-th term and the magnitude of the logs that went into it.
fn sum_series<T>(routine: &'static str, z: f64, cfg: &SeriesConfig, ln_term: T) -> Result<SeriesEval>
where
    T: Fn(usize, f64) -> (f64, f64),
{
    if z < 0.0 && -z > cfg.negative_cap {
        return Err(Error::PrecisionLoss {
            routine,
            lost_digits: f64::NAN,
            bound: f64::INFINITY,
            needed_digits: 0,
        });
    }
    let (ln0, _) = ln_term(0, 0.0);
    if z == 0.0 {
        let v = ln0.exp();
        return Ok(SeriesEval::new(v, f64::EPSILON * v, 1, Method::Series));
    }
    let ln_abs_z = z.abs().ln();
    let negative = z < 0.0;
    let mut sum = CompensatedSum::new();
    let mut term_error = 0.0;
    let mut prev_abs = f64::INFINITY;
    for n in 0..cfg.max_terms {
        let (ln_t, mag) = ln_term(n, ln_abs_z);
        let abs_t = ln_t.exp();
        let t = if negative && n % 2 == 1 { -abs_t } else { abs_t };
        if n > 2 && abs_t < prev_abs && abs_t <= cfg.rel_tol * sum.value().abs() {
            let q = abs_t / prev_abs;
            let tail = abs_t / (1.0 - q);
            sum.add(t);
            term_error += 4.0 * f64::EPSILON * (1.0 + mag) * abs_t;
            let value = sum.value();
            let rounding = sum.cancellation_bound() * value.abs();
            if negative {
                let rel = (rounding + term_error) / value.abs();
                if rel > cfg.cancellation_budget || !rel.is_finite() {
                    let lost = (sum.abs_sum() / value.abs()).log10();
                    return Err(Error::PrecisionLoss {
                        routine,
                        lost_digits: lost,
                        bound: rel,
                        needed_digits: (lost.max(0.0) + 20.0).ceil() as u32,
                    });
                }
            }
            return Ok(SeriesEval::new(value, tail + rounding + term_error, n + 1, Method::Series));
        }
        if !abs_t.is_finite() {
            return Err(Error::Overflow {
                routine,
                log_magnitude: ln_t,
            });
        }
        sum.add(t);
        term_error += 4.0 * f64::EPSILON * (1.0 + mag) * abs_t;
        prev_abs = abs_t;
    }
    Err(Error::NonConvergence {
        routine,
        terms: cfg.max_terms,
        estimate: prev_abs,
    })
}
