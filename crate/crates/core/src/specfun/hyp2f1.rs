//! Gauss hypergeometric function `2F1(α, β; γ; z)` on the real branch `z < 1`.

use super::{Method, SeriesEval};
use crate::error::{domain, Error, Result};
use crate::numeric::CompensatedSum;

const MAX_TERMS: usize = 20_000;

/// `2F1(α, β; γ; z)` for real `z < 1`.
///
/// The power series is summed directly for `-1/2 <= z < 1`; for `z < -1/2`
/// Pfaff's transformation `2F1(α,β;γ;z) = (1-z)^{-α} 2F1(α, γ-β; γ; z/(z-1))`
/// maps the argument into `(1/3, 1)`.
pub fn hyp2f1(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<SeriesEval> {
    check_params(alpha, beta, gamma, z)?;
    if z >= -0.5 {
        return hyp2f1_series(alpha, beta, gamma, z);
    }
    let w = z / (z - 1.0);
    let inner = hyp2f1_series(alpha, gamma - beta, gamma, w)?;
    let prefactor = (-alpha * (-z).ln_1p()).exp();
    Ok(SeriesEval::new(
        prefactor * inner.value,
        prefactor * inner.abs_error_estimate + 4.0 * f64::EPSILON * (prefactor * inner.value).abs(),
        inner.terms_used,
        Method::Hybrid,
    ))
}

fn check_params(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<()> {
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma), ("z", z)] {
        crate::error::ensure_finite("hyp2f1", name, v)?;
    }
    if gamma <= 0.0 && gamma.fract() == 0.0 {
        return Err(domain("hyp2f1", format!("gamma = {gamma} is a nonpositive integer")));
    }
    if z >= 1.0 {
        return Err(domain("hyp2f1", format!("z = {z} is on or beyond the branch point z = 1")));
    }
    Ok(())
}

/// Direct power series `Σ (α)_k (β)_k / ((γ)_k k!) z^k` for `|z| < 1`.
pub fn hyp2f1_series(alpha: f64, beta: f64, gamma: f64, z: f64) -> Result<SeriesEval> {
    check_params(alpha, beta, gamma, z)?;
    if z <= -1.0 {
        return Err(domain("hyp2f1_series", format!("|z| = {} >= 1", z.abs())));
    }
    let mut sum = CompensatedSum::new();
    let mut term = 1.0_f64;
    sum.add(term);
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let ratio = (alpha + kf) * (beta + kf) / ((gamma + kf) * (kf + 1.0)) * z;
        let next = term * ratio;
        k += 1;
        if next == 0.0 {
            // Terminating (polynomial) series.
            let err = sum.cancellation_bound() * sum.value().abs();
            return Ok(SeriesEval::new(sum.value(), err, k, Method::Series));
        }
        let q = ratio.abs().max(z.abs());
        let small = next.abs() <= 1e-17 * sum.value().abs().max(f64::MIN_POSITIVE);
        if small && q < 1.0 {
            let tail = next.abs() / (1.0 - q);
            let err = tail + sum.cancellation_bound() * sum.value().abs();
            return Ok(SeriesEval::new(sum.value(), err, k, Method::Series));
        }
        if k >= MAX_TERMS || !next.is_finite() {
            return Err(Error::NonConvergence {
                routine: "hyp2f1_series",
                terms: k,
                estimate: next.abs(),
            });
        }
        sum.add(next);
        term = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero_is_one() {
        for &(a, b, c) in &[(0.5, -0.75, 0.25), (1.0, 2.0, 3.0), (-2.5, 0.3, 1.7)] {
            assert_eq!(hyp2f1(a, b, c, 0.0).unwrap().value, 1.0);
        }
    }

    #[test]
    fn log_identity_at_half() {
        // 2F1(1,1;2;z) = -ln(1-z)/z
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v.value - 2.0 * std::f64::consts::LN_2).abs() < 1e-15, "{v:?}");
    }

    #[test]
    fn pfaff_branch_matches_closed_form() {
        // 2F1(1,1;2;z) = ln(1-z)/(-z) also for z < -1/2
        for &z in &[-0.6, -1.21, -3.0, -20.0] {
            let v = hyp2f1(1.0, 1.0, 2.0, z).unwrap();
            let exact = (-z).ln_1p() / (-z);
            assert!((v.value - exact).abs() < 1e-14, "z={z}: {} vs {exact}", v.value);
            assert_eq!(v.method, Method::Hybrid);
        }
        // 2F1(1/2, 1/2; 3/2; -x^2) = asinh(x)/x
        let x: f64 = 1.3;
        let v = hyp2f1(0.5, 0.5, 1.5, -x * x).unwrap();
        assert!((v.value - x.asinh() / x).abs() < 1e-14);
    }

    #[test]
    fn terminating_series() {
        // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
        let (b, c, z) = (0.7, 1.3, 0.4);
        let exact = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        let v = hyp2f1(-2.0, b, c, z).unwrap();
        assert!((v.value - exact).abs() < 1e-15);
        assert_eq!(v.terms_used, 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.1).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.0).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, f64::NAN).is_err());
    }

    #[test]
    fn error_estimate_brackets_truth() {
        let v = hyp2f1(0.5, 0.5, 1.5, -0.45).unwrap();
        let exact = (0.45f64).sqrt().asinh() / 0.45f64.sqrt();
        assert!((v.value - exact).abs() <= v.abs_error_estimate.max(1e-16));
    }
}
