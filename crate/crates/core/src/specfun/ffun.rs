//! The decreasing function
//! `F(z) = (1/a) ∫_z^∞ u^{-1-1/a} (1+u²)^{-1/2} du`, `z > 0`, `a ∈ (1/2, 1)`,
//! and its compositional inverse.
//!
//! `F(z) ~ z^{-1/a} - ρ_a^{1/a}` at the origin and `F(z) ~ z^{-1-1/a}/(a+1)` at infinity.

use serde::Serialize;

use super::gamma::ln_gamma;
use super::hyp2f1::hyp2f1;
use super::{Method, SeriesEval};
use crate::error::{domain, ensure_finite, Error, Result};
use crate::numeric::{integrate, newton_bracketed, CompensatedSum, QuadConfig};

/// Regime used to evaluate `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FMethod {
    /// Descending series for `z > 1.1`, second hypergeometric form below.
    Auto,
    Quadrature,
    /// Descending series in `z^{-2}`; requires `z > 1`.
    Series,
    /// `z^{-1-1/a}/(a+1) · 2F1(1/2, 1/2+1/(2a); 3/2+1/(2a); -1/z²)`.
    Hypergeo,
    /// `-ρ_a^{1/a} + z^{-1/a} · 2F1(1/2, -1/(2a); 1-1/(2a); -z²)`.
    Hypergeo2,
}

/// Split point between the two regimes of [`FMethod::Auto`].
const SERIES_MIN_Z: f64 = 1.1;
/// Largest relative disagreement tolerated between reliable regimes.
const CONSISTENCY_TOL: f64 = 1e-8;
/// Regimes whose own error estimate exceeds this are not cross-checked.
const RELIABLE_REL_ERR: f64 = 1e-10;

/// `ln(ρ_a^{1/a}) = ln(Γ(1/2 + 1/(2a)) Γ(1 - 1/(2a)) / √π)`, `a > 1/2`.
pub(crate) fn ln_rho_root(a: f64) -> f64 {
    let inv = 1.0 / (2.0 * a);
    ln_gamma(0.5 + inv) + ln_gamma((2.0 * a - 1.0) / (2.0 * a)) - 0.5 * std::f64::consts::PI.ln()
}

fn check(routine: &'static str, a: f64, z: f64) -> Result<()> {
    ensure_finite(routine, "a", a)?;
    ensure_finite(routine, "z", z)?;
    if !(a > 0.5 && a < 1.0) {
        return Err(domain(routine, format!("a = {a} not in (1/2, 1)")));
    }
    if z <= 0.0 {
        return Err(domain(routine, format!("z = {z} must be > 0")));
    }
    Ok(())
}

/// `F(z)` with the automatic regime choice.
pub fn f_eval(a: f64, z: f64) -> Result<SeriesEval> {
    f_eval_with(a, z, FMethod::Auto)
}

pub fn f_eval_with(a: f64, z: f64, method: FMethod) -> Result<SeriesEval> {
    check("f_eval", a, z)?;
    match method {
        FMethod::Auto if z > SERIES_MIN_Z => descending_series(a, z),
        FMethod::Auto => hypergeo2(a, z),
        FMethod::Quadrature => quadrature(a, z),
        FMethod::Series => descending_series(a, z),
        FMethod::Hypergeo => hypergeo(a, z),
        FMethod::Hypergeo2 => hypergeo2(a, z),
    }
}

/// `F'(z) = -(1/a) z^{-1-1/a} / √(1+z²)`.
pub fn f_derivative(a: f64, z: f64) -> Result<f64> {
    check("f_derivative", a, z)?;
    Ok(-(-(1.0 + 1.0 / a) * z.ln()).exp() / (a * z.hypot(1.0)))
}

fn quadrature(a: f64, z: f64) -> Result<SeriesEval> {
    // u = z/t maps the integral onto t ∈ (0, 1]:
    // F(z) = (1/a) z^{-1/a} ∫_0^1 t^{1/a} / √(t² + z²) dt.
    let inv_a = 1.0 / a;
    let integrand = |t: f64| t.powf(inv_a) / t.hypot(z);
    let cfg = QuadConfig {
        abs_tol: 0.0,
        rel_tol: 1e-14,
        max_intervals: 4000,
    };
    let mut value = 0.0;
    let mut err = 0.0;
    let mut evaluations = 0;
    // The integrand bends on the scale t ~ z; split there.
    let breaks: Vec<f64> = if z < 1.0 { vec![0.0, z, 1.0] } else { vec![0.0, 1.0] };
    for w in breaks.windows(2) {
        let q = integrate(integrand, w[0], w[1], cfg)?;
        value += q.value;
        err += q.abs_error;
        evaluations += q.evaluations;
    }
    let scale = (-inv_a * z.ln()).exp() / a;
    let v = scale * value;
    Ok(SeriesEval::new(
        v,
        scale * err + 8.0 * f64::EPSILON * v.abs(),
        evaluations,
        Method::Quadrature,
    ))
}

fn descending_series(a: f64, z: f64) -> Result<SeriesEval> {
    if z <= 1.0 {
        return Err(domain("f_eval", format!("descending series needs z > 1, got {z}")));
    }
    let w = 1.0 / (z * z);
    let mut sum = CompensatedSum::new();
    // coef = (1/2)_n / n!
    let mut coef = 1.0_f64;
    let mut wn = 1.0_f64;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let t = coef * wn / (1.0 + a + 2.0 * a * nf);
        let signed = if n % 2 == 0 { t } else { -t };
        // Alternating with decreasing terms: the first omitted term bounds the tail.
        if n > 0 && t <= 1e-17 * sum.value().abs() {
            let prefactor = (-(1.0 + 1.0 / a) * z.ln()).exp();
            let v = prefactor * sum.value();
            let err = prefactor * (t + sum.cancellation_bound() * sum.value().abs()) + 4.0 * f64::EPSILON * v;
            return Ok(SeriesEval::new(v, err, n, Method::Series));
        }
        if n >= 100_000 {
            return Err(Error::NonConvergence {
                routine: "f_eval",
                terms: n,
                estimate: t,
            });
        }
        sum.add(signed);
        coef *= (nf + 0.5) / (nf + 1.0);
        wn *= w;
        n += 1;
    }
}

fn hypergeo(a: f64, z: f64) -> Result<SeriesEval> {
    let h = hyp2f1(0.5, 0.5 + 0.5 / a, 1.5 + 0.5 / a, -1.0 / (z * z))?;
    let prefactor = (-(1.0 + 1.0 / a) * z.ln()).exp() / (a + 1.0);
    let v = prefactor * h.value;
    Ok(SeriesEval::new(
        v,
        prefactor * h.abs_error_estimate + 4.0 * f64::EPSILON * v.abs(),
        h.terms_used,
        Method::Hybrid,
    ))
}

fn hypergeo2(a: f64, z: f64) -> Result<SeriesEval> {
    let h = hyp2f1(0.5, -0.5 / a, (2.0 * a - 1.0) / (2.0 * a), -z * z)?;
    let rho_root = ln_rho_root(a).exp();
    let lead = (-z.ln() / a).exp() * h.value;
    let v = lead - rho_root;
    let rounding = 4.0 * f64::EPSILON * (lead.abs() + rho_root);
    Ok(SeriesEval::new(
        v,
        (-z.ln() / a).exp() * h.abs_error_estimate + rounding,
        h.terms_used,
        Method::Hybrid,
    ))
}

/// Every applicable regime of `F(z)`, evaluated side by side.
#[derive(Debug, Clone, Serialize)]
pub struct FRegimes {
    pub z: f64,
    pub quadrature: SeriesEval,
    pub series: Option<SeriesEval>,
    pub hypergeo: Option<SeriesEval>,
    pub hypergeo2: Option<SeriesEval>,
    /// Largest relative deviation from the quadrature among reliable regimes.
    pub max_rel_disagreement: f64,
}

/// Evaluates all regimes and fails with [`Error::Inconsistent`] when two
/// reliable ones differ by more than `1e-8` relative.
pub fn f_regimes(a: f64, z: f64) -> Result<FRegimes> {
    check("f_regimes", a, z)?;
    let quad = quadrature(a, z)?;
    let series = if z > 1.0 { descending_series(a, z).ok() } else { None };
    let hg = hypergeo(a, z).ok();
    let hg2 = hypergeo2(a, z).ok();
    let mut worst = 0.0_f64;
    for r in [series, hg, hg2].iter().flatten() {
        if r.rel_error_estimate() < RELIABLE_REL_ERR {
            worst = worst.max((r.value - quad.value).abs() / quad.value.abs());
        }
    }
    if worst > CONSISTENCY_TOL {
        return Err(Error::Inconsistent {
            routine: "f_regimes",
            difference: worst,
            tolerance: CONSISTENCY_TOL,
        });
    }
    Ok(FRegimes {
        z,
        quadrature: quad,
        series,
        hypergeo: hg,
        hypergeo2: hg2,
        max_rel_disagreement: worst,
    })
}

/// Two-term expansion of `F^{-1}(y)` as `y → 0⁺`: returns the leading term
/// `((a+1)y)^{-a/(a+1)}` and the corrected value
/// `((a+1)y)^{-a/(a+1)} (1 - c₁ y^{2a/(a+1)})`, `c₁ = a(a+1)^{2a/(a+1)} / (2(3a+1))`.
pub fn inverse_small_y_asymptote(a: f64, y: f64) -> (f64, f64) {
    let lead = ((a + 1.0) * y).powf(-a / (a + 1.0));
    let c1 = a * (a + 1.0).powf(2.0 * a / (a + 1.0)) / (2.0 * (3.0 * a + 1.0));
    (lead, lead * (1.0 - c1 * y.powf(2.0 * a / (a + 1.0))))
}

/// The unique `z > 0` with `F(z) = y`.
///
/// Newton iteration in `ln z`, safeguarded by a bracket grown from the
/// asymptotic guesses of both regimes; the residual satisfies
/// `|F(z) - y| < 1e-11 max(1, y)`.
pub fn f_inverse(a: f64, y: f64) -> Result<f64> {
    check("f_inverse", a, y)?;
    let rho_root = ln_rho_root(a).exp();
    let guess = if y < 1.0 {
        inverse_small_y_asymptote(a, y).0
    } else {
        (y + rho_root).powf(-a)
    };
    let g = |s: f64| -> Result<(f64, f64)> {
        let z = s.exp();
        let f = f_eval(a, z)?.value - y;
        let df = -(-z.ln() / a).exp() / (a * z.hypot(1.0));
        Ok((f, df))
    };
    let s0 = guess.ln();
    let mut lo = s0 - 0.5;
    let mut hi = s0 + 0.5;
    for _ in 0..200 {
        if g(lo)?.0 > 0.0 {
            break;
        }
        lo -= 2.0;
    }
    for _ in 0..200 {
        if g(hi)?.0 < 0.0 {
            break;
        }
        hi += 2.0;
    }
    let (f_lo, f_hi) = (g(lo)?.0, g(hi)?.0);
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::Bracketing {
            routine: "f_inverse",
            detail: format!("no sign change of F - y around ln z = {s0} (y = {y})"),
        });
    }
    let failure = std::cell::Cell::new(None);
    let s = newton_bracketed(
        |s| match g(s) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                (f64::NAN, f64::NAN)
            }
        },
        lo,
        hi,
        1e-15,
        200,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let z = s?.exp();
    let residual = (f_eval(a, z)?.value - y).abs();
    let bound = 1e-11 * y.max(1.0);
    if residual > bound {
        return Err(Error::NonConvergence {
            routine: "f_inverse",
            terms: 200,
            estimate: residual,
        });
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes_agree_at_one() {
        let r = f_regimes(2.0 / 3.0, 1.0).unwrap();
        let q = r.quadrature.value;
        assert!((r.hypergeo2.unwrap().value - q).abs() < 1e-9 * q);
        assert!((r.hypergeo.unwrap().value - q).abs() < 1e-9 * q);
    }

    #[test]
    fn first_hypergeometric_form_at_two() {
        let a = 2.0 / 3.0;
        let q = f_eval_with(a, 2.0, FMethod::Quadrature).unwrap().value;
        let h = f_eval_with(a, 2.0, FMethod::Hypergeo).unwrap().value;
        let s = f_eval_with(a, 2.0, FMethod::Series).unwrap().value;
        assert!((h - q).abs() < 1e-9 * q, "{h} {q}");
        assert!((s - q).abs() < 1e-9 * q, "{s} {q}");
    }

    #[test]
    fn behaviour_at_origin() {
        let a = 0.7;
        let rho_root = ln_rho_root(a).exp();
        let z: f64 = 1e-6;
        let f = f_eval(a, z).unwrap().value;
        assert!((f - z.powf(-1.0 / a) + rho_root).abs() < 1e-3, "{}", f - z.powf(-1.0 / a));
    }

    #[test]
    fn behaviour_at_infinity() {
        let a = 0.8;
        let z: f64 = 1e4;
        let f = f_eval(a, z).unwrap().value;
        let scaled = f * (a + 1.0) * z.powf(1.0 + 1.0 / a);
        assert!((scaled - 1.0).abs() < 1e-7);
    }

    #[test]
    fn inverse_round_trip() {
        let a = 0.7;
        for &y in &[0.01, 1.0, 100.0] {
            let z = f_inverse(a, y).unwrap();
            let back = f_eval(a, z).unwrap().value;
            assert!((back - y).abs() < 1e-10 * y.max(1.0), "y={y}: {back}");
        }
    }

    #[test]
    fn inverse_small_y_expansion() {
        let a = 0.7;
        let mut prev = f64::INFINITY;
        for &y in &[1e-2, 1e-3, 1e-4] {
            let z = f_inverse(a, y).unwrap();
            let (lead, second) = inverse_small_y_asymptote(a, y);
            assert!((z / lead - 1.0).abs() < 0.05);
            let err2 = (z / second - 1.0).abs();
            assert!(err2 < (z / lead - 1.0).abs());
            assert!(err2 < prev);
            prev = err2;
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let a = 0.6;
        let z = 0.9;
        let h = 1e-5;
        let fd = (f_eval(a, z + h).unwrap().value - f_eval(a, z - h).unwrap().value) / (2.0 * h);
        assert!((f_derivative(a, z).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(f_eval(0.5, 1.0).is_err());
        assert!(f_eval(0.7, 0.0).is_err());
        assert!(f_inverse(0.7, -1.0).is_err());
    }
}
