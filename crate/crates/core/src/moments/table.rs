use serde::Serialize;

use super::constants::rho;
use crate::error::{domain, ensure_finite, Error, Result};
use crate::specfun::ln_gamma;

/// Smallest admissible memory index is `MIN_A` exclusive: `m₂ = a/(2a-1)`
/// blows up at `a = 1/2`.
pub const MIN_A: f64 = 0.5 + 1e-6;

/// Largest index for which unscaled moments are reported.
const UNSCALED_MAX_N: usize = 50;

/// Scaled moments `m_n / ρ_a^n`, `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentTable {
    a: f64,
    n_max: usize,
    scaled: Vec<f64>,
    rho: f64,
}

pub(crate) fn check_a(routine: &'static str, a: f64) -> Result<()> {
    ensure_finite(routine, "a", a)?;
    if !(a > MIN_A && a <= 1.0) {
        return Err(domain(routine, format!("a = {a} not in ({MIN_A}, 1]")));
    }
    Ok(())
}

#[inline]
fn c(i: usize, a: f64) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        a
    }
}

/// Runs `m_n = (na - c_n)^{-1} Σ_{i=1}^{n-1} c_i m_i m_{n-i}` from the given `m_1`.
fn recurrence(a: f64, n_max: usize, m1: f64) -> Vec<f64> {
    let mut m = Vec::with_capacity(n_max + 1);
    m.push(1.0);
    if n_max >= 1 {
        m.push(m1);
    }
    for n in 2..=n_max {
        let s: f64 = (1..n).map(|i| c(i, a) * m[i] * m[n - i]).sum();
        m.push(s / (n as f64 * a - c(n, a)));
    }
    m
}

/// Builds the scaled moment table up to `n_max`.
pub fn moment_sequence(a: f64, n_max: usize) -> Result<MomentTable> {
    check_a("moment_sequence", a)?;
    if n_max < 2 {
        return Err(domain("moment_sequence", format!("n_max = {n_max} must be >= 2")));
    }
    let rho = rho(a)?;
    // The recurrence is homogeneous of degree n, so scaling m_1 by 1/ρ
    // scales every m_n by ρ^{-n}.
    let scaled = recurrence(a, n_max, 1.0 / rho);
    Ok(MomentTable { a, n_max, scaled, rho })
}

/// Unscaled moments from the plain recurrence; fails once they overflow.
pub fn moment_sequence_unscaled(a: f64, n_max: usize) -> Result<Vec<f64>> {
    check_a("moment_sequence_unscaled", a)?;
    let m = recurrence(a, n_max, 1.0);
    if let Some(bad) = m.iter().find(|v| !v.is_finite()) {
        return Err(Error::Overflow {
            routine: "moment_sequence_unscaled",
            log_magnitude: *bad,
        });
    }
    Ok(m)
}

impl MomentTable {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `m_n / ρ_a^n` for `n = 0..=n_max`.
    pub fn scaled(&self) -> &[f64] {
        &self.scaled
    }

    /// `ln m_n`.
    pub fn ln_moment(&self, n: usize) -> f64 {
        self.scaled[n].ln() + n as f64 * self.rho.ln()
    }

    /// `m_n` itself, for `n <= 50`.
    pub fn unscaled(&self, n: usize) -> Option<f64> {
        (n <= UNSCALED_MAX_N && n <= self.n_max).then(|| self.scaled[n] * self.rho.powi(n as i32))
    }

    /// `ln E[L₁ⁿ] = ln n! + ln m_n - ln Γ(1+an)`.
    pub fn limit_moment_ln(&self, n: usize) -> f64 {
        ln_gamma(n as f64 + 1.0) + self.ln_moment(n) - ln_gamma(1.0 + self.a * n as f64)
    }
}

/// `ln E[L₁ⁿ]`.
pub fn limit_moment_ln(a: f64, n: usize) -> Result<f64> {
    let table = moment_sequence(a, n.max(2))?;
    Ok(table.limit_moment_ln(n))
}

/// `E[L₁ⁿ]`, failing with [`Error::Overflow`] when it exceeds the double range.
pub fn limit_moment(a: f64, n: usize) -> Result<f64> {
    let ln = limit_moment_ln(a, n)?;
    if ln > f64::MAX.ln() {
        return Err(Error::Overflow {
            routine: "limit_moment",
            log_magnitude: ln,
        });
    }
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_closed_forms() {
        let a = 0.75;
        let t = moment_sequence(a, 10).unwrap();
        assert!((t.unscaled(2).unwrap() - 1.5).abs() < 1e-14);
        assert!((t.unscaled(3).unwrap() - 1.75).abs() < 1e-14);
        assert!((t.unscaled(4).unwrap() - 2.4375).abs() < 1e-14);
        assert_eq!(t.scaled()[0], 1.0);
        assert!((t.scaled()[1] * t.rho() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn deterministic_limit() {
        let m = moment_sequence_unscaled(1.0 - 1e-9, 10).unwrap();
        for v in m {
            assert!((v - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn limit_moments() {
        assert_eq!(limit_moment(0.8, 0).unwrap(), 1.0);
        // Γ(1.8) = 0.931383770980243 (mpmath)
        assert!((limit_moment(0.8, 1).unwrap() - 1.0 / 0.931_383_770_980_243).abs() < 1e-13);
        // 2 · 1.5 / Γ(2.5), Γ(2.5) = 3√π/4
        let expected = 3.0 / (0.75 * std::f64::consts::PI.sqrt());
        assert!((limit_moment(0.75, 2).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn rejects_critical_region() {
        assert!(moment_sequence(0.5 + 1e-7, 10).is_err());
        assert!(moment_sequence(0.7, 1).is_err());
        assert!(moment_sequence(1.1, 10).is_err());
    }

    #[test]
    fn scaled_matches_unscaled() {
        let a = 0.62;
        let t = moment_sequence(a, 50).unwrap();
        let u = moment_sequence_unscaled(a, 50).unwrap();
        for n in 0..=50 {
            let rel = (t.unscaled(n).unwrap() - u[n]).abs() / u[n];
            assert!(rel < 1e-12, "n={n}: {rel}");
        }
    }
}
