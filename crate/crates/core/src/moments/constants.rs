use serde::Serialize;

use super::table::check_a;
use crate::error::{domain, ensure_finite, Result};
use crate::numeric::{integrate, CompensatedSum, QuadConfig};
use crate::specfun::{ln_gamma, ln_rho_root, Method, SeriesEval};

/// `ln ρ_a`, `a ∈ (1/2, 10]`.
pub fn ln_rho(a: f64) -> Result<f64> {
    ensure_finite("rho", "a", a)?;
    if !(a > 0.5 && a <= 10.0) {
        return Err(domain("rho", format!("a = {a} not in (1/2, 10]")));
    }
    Ok(a * ln_rho_root(a))
}

/// `ρ_a = (Γ(1/2 + 1/(2a)) Γ(1 - 1/(2a)) / √π)^a`.
pub fn rho(a: f64) -> Result<f64> {
    Ok(ln_rho(a)?.exp())
}

/// Split point between the small-`u` series and the quadrature.
const SERIES_EDGE: f64 = 0.5;

/// `ρ_a` from `ρ_a^{1/a} = (1/a) ∫_0^∞ (1 - (1+u²)^{-1/2}) u^{-1-1/a} du`.
///
/// `[0, 1/2]` is integrated term by term from the binomial series,
/// `[1/2, 1]` by adaptive Gauss-Kronrod and `[1, ∞)` after `u = tan θ`.
pub fn rho_integral(a: f64) -> Result<SeriesEval> {
    if !(a > 0.5 && a < 1.0) {
        return Err(domain("rho_integral", format!("a = {a} not in (1/2, 1)")));
    }
    let inv_a = 1.0 / a;

    // 1 - (1+u²)^{-1/2} = Σ_{n≥1} (-1)^{n+1} (1/2)_n/n! u^{2n}
    let mut head = CompensatedSum::new();
    let mut coef = 0.5_f64;
    let mut n = 1usize;
    let mut last = f64::INFINITY;
    while n < 400 {
        let e = 2.0 * n as f64 - inv_a;
        let t = coef * SERIES_EDGE.powf(e) / e;
        head.add(if n % 2 == 1 { t } else { -t });
        last = t;
        if t < 1e-18 * head.value().abs() {
            break;
        }
        coef *= (n as f64 + 0.5) / (n as f64 + 1.0);
        n += 1;
    }

    let cfg = QuadConfig {
        abs_tol: 1e-15,
        rel_tol: 1e-14,
        max_intervals: 4000,
    };
    let mid = integrate(
        |u: f64| {
            let s = u.hypot(1.0);
            // 1 - 1/s written without cancellation
            u * u / (s * (1.0 + s)) * u.powf(-1.0 - inv_a)
        },
        SERIES_EDGE,
        1.0,
        cfg,
    )?;
    let far = integrate(
        |th: f64| {
            let (s, c) = th.sin_cos();
            let one_minus_cos = 2.0 * (0.5 * th).sin().powi(2);
            one_minus_cos * c.max(0.0).powf(inv_a - 1.0) / s.powf(1.0 + inv_a)
        },
        std::f64::consts::FRAC_PI_4,
        std::f64::consts::FRAC_PI_2,
        cfg,
    )?;

    let total = head.value() + mid.value + far.value;
    let total_err = last + head.cancellation_bound() * head.value().abs() + mid.abs_error + far.abs_error;
    let root = total / a;
    let value = root.powf(a);
    // d(x^a)/x^a = a dx/x
    let err = value * a * (total_err / total.abs()) + 4.0 * f64::EPSILON * value;
    Ok(SeriesEval::new(
        value,
        err,
        n + mid.evaluations + far.evaluations,
        Method::Hybrid,
    ))
}

/// Constants attached to one memory index `a ∈ (1/2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitLawContext {
    pub a: f64,
    pub rho: f64,
    /// `κ_a = (ρ_a^{2/(a+1)}/4) ((a+1)/a)^{2a/(a+1)}`.
    pub kappa: f64,
    /// `δ_a = (1-a)/(1+a)`.
    pub delta: f64,
    /// Prefactor of the right tail of the density of `L₁`.
    pub c_pos: f64,
    /// Prefactor of the left tail of the density of `L₁`.
    pub c_neg: f64,
}

pub fn context(a: f64) -> Result<LimitLawContext> {
    check_a("context", a)?;
    if a >= 1.0 {
        return Err(domain("context", "a = 1 is the deterministic walk; the tail constants degenerate"));
    }
    let ln_r = ln_rho(a)?;
    let rho = ln_r.exp();
    let kappa = (2.0 / (a + 1.0) * ln_r - 4f64.ln() + 2.0 * a / (a + 1.0) * ((a + 1.0) / a).ln()).exp();
    let delta = (1.0 - a) / (1.0 + a);
    let pi = std::f64::consts::PI;
    let c_pos = (2.0 / (pi * (1.0 - a * a) * (1.0 + a))).sqrt() * ((a.ln() - ln_r) / (2.0 * (1.0 - a))).exp();
    let ln_c_neg = -0.5 * (2.0 * pi * (1.0 - a)).ln()
        + (3.0 * a - 1.0) / (2.0 * (1.0 - a * a)) * (ln_r - a.ln())
        + 2.0 / (a + 1.0) * ln_r
        - 2f64.ln()
        - delta * (a + 1.0).ln()
        - ln_gamma(delta);
    Ok(LimitLawContext {
        a,
        rho,
        kappa,
        delta,
        c_pos,
        c_neg: ln_c_neg.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath, 40 digits
    const RHO_TWO_THIRDS: f64 = 1.509_216_281_025_051;
    const RHO_THREE_QUARTERS: f64 = 1.288_556_052_618_009;

    #[test]
    fn rho_reference_values() {
        assert!((rho(2.0 / 3.0).unwrap() - RHO_TWO_THIRDS).abs() < 1e-14);
        assert!((rho(0.75).unwrap() - RHO_THREE_QUARTERS).abs() < 1e-14);
        assert!(rho(0.5).is_err());
        assert!(rho(4.0).unwrap().is_finite());
    }

    #[test]
    fn integral_oracle_agrees() {
        for i in 0..9 {
            let a = 0.55 + 0.05 * i as f64;
            let q = rho_integral(a).unwrap();
            let g = rho(a).unwrap();
            assert!((q.value - g).abs() < 1e-10, "a={a}: {} vs {g}", q.value);
            assert!(q.value > 1.0);
        }
    }

    #[test]
    fn context_reference_values() {
        let ctx = context(0.75).unwrap();
        assert!((ctx.delta - 1.0 / 7.0).abs() < 1e-16);
        assert!((ctx.c_pos - 0.308_921_336_260_269_3).abs() < 1e-13);
        assert!((ctx.c_neg - 0.162_811_178_322_304_9).abs() < 1e-13);
        assert!((ctx.kappa - 0.690_527_600_481_041_9).abs() < 1e-13);
    }
}
