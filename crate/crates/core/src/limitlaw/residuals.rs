use serde::Serialize;

use super::genfun::{genfun, GenFunValue};
use crate::error::{domain, Result};
use crate::moments::rho;
use crate::specfun::f_eval;

/// Relative finite-difference steps `h = rel * x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRule {
    pub first: f64,
    pub second: f64,
}

impl Default for StepRule {
    /// `ε^{1/3}` for first and `ε^{1/4}` for second derivatives.
    fn default() -> Self {
        StepRule {
            first: f64::EPSILON.cbrt(),
            second: f64::EPSILON.powf(0.25),
        }
    }
}

impl StepRule {
    pub fn halved(self) -> Self {
        StepRule {
            first: 0.5 * self.first,
            second: 0.5 * self.second,
        }
    }
}

/// Residuals of the equations satisfied by `M, A, B` at one point.
///
/// ODE residuals are relative: `|Σ terms| / Σ |terms|`. The implicit-equation
/// residual is absolute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub x: f64,
    /// `M + axM' - pM² - (1-p) M(x) M(-x)`.
    pub r_m: f64,
    /// `A + axA' - p(A² + B²) - (1-p)(A² - B²)`.
    pub r_sys_even: f64,
    /// `B + axB' - 2pAB`.
    pub r_sys_odd: f64,
    /// `a(a+1)x²BB'' - a(a+2)x²B'² + x((a+1)²-2)BB' - (a+1)²B⁴ + B²`.
    pub r_b: f64,
    /// `x^{1/a} F((x^{1/a} B)^{a/(a+1)}) + (ρ_a x)^{1/a} - 1`.
    pub r_imp: f64,
}

impl Residuals {
    pub fn r_sys(&self) -> f64 {
        self.r_sys_even.max(self.r_sys_odd)
    }

    /// Largest of the finite-difference residuals.
    pub fn max_ode(&self) -> f64 {
        self.r_m.max(self.r_sys()).max(self.r_b)
    }
}

fn relative(terms: &[f64]) -> f64 {
    let s: f64 = terms.iter().sum();
    let m: f64 = terms.iter().map(|t| t.abs()).sum();
    if m == 0.0 {
        0.0
    } else {
        s.abs() / m
    }
}

/// Residuals with the default finite-difference steps.
pub fn residuals(a: f64, x: f64) -> Result<Residuals> {
    residuals_with_steps(a, x, StepRule::default())
}

pub fn residuals_with_steps(a: f64, x: f64, steps: StepRule) -> Result<Residuals> {
    let rho = rho(a)?;
    if !(x > 0.0 && x < 0.95 / rho) {
        return Err(domain("residuals", format!("x = {x} not in (0, 0.95/rho_a)")));
    }
    let p = (1.0 + a) / 2.0;
    let at = |t: f64| -> Result<GenFunValue> { genfun(a, t) };
    let c = at(x)?;
    let h1 = steps.first * x;
    let (lo, hi) = (at(x - h1)?, at(x + h1)?);
    let d = |f: fn(&GenFunValue) -> f64| (f(&hi) - f(&lo)) / (2.0 * h1);
    let dm = d(|v| v.m);
    let da = d(|v| v.a_even);
    let db = d(|v| v.b);
    let h2 = steps.second * x;
    let (lo2, hi2) = (at(x - h2)?, at(x + h2)?);
    let db2 = (hi2.b - lo2.b) / (2.0 * h2);
    let ddb = (hi2.b - 2.0 * c.b + lo2.b) / (h2 * h2);

    let (m, am, b) = (c.m, c.a_even, c.b);
    let r_m = relative(&[m, a * x * dm, -p * m * m, -(1.0 - p) * m * c.m_reflected()]);
    let r_sys_even = relative(&[am, a * x * da, -p * (am * am + b * b), -(1.0 - p) * (am * am - b * b)]);
    let r_sys_odd = relative(&[b, a * x * db, -2.0 * p * am * b]);
    let r_b = relative(&[
        a * (a + 1.0) * x * x * b * ddb,
        -a * (a + 2.0) * x * x * db2 * db2,
        x * ((a + 1.0).powi(2) - 2.0) * b * db2,
        -(a + 1.0).powi(2) * b.powi(4),
        b * b,
    ]);
    let xa = x.powf(1.0 / a);
    let z = (xa * b).powf(a / (a + 1.0));
    let r_imp = xa * f_eval(a, z)?.value + (rho * x).powf(1.0 / a) - 1.0;
    Ok(Residuals {
        x,
        r_m,
        r_sys_even,
        r_sys_odd,
        r_b,
        r_imp: r_imp.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_equation() {
        let a = 0.7;
        let r = residuals(a, 0.5 / rho(a).unwrap()).unwrap();
        assert!(r.r_imp < 1e-9, "{r:?}");
    }

    #[test]
    fn delay_equation_and_b_equation() {
        let a = 0.75;
        let r = residuals(a, 0.4 / rho(a).unwrap()).unwrap();
        assert!(r.r_m < 1e-6, "{r:?}");
        assert!(r.r_sys() < 1e-6, "{r:?}");
        let a = 0.6;
        let r = residuals(a, 0.7 / rho(a).unwrap()).unwrap();
        assert!(r.r_b < 1e-6, "{r:?}");
    }

    #[test]
    fn truncation_error_is_quadratic() {
        let a = 0.65;
        let x = 0.5 / rho(a).unwrap();
        let coarse = StepRule {
            first: 0.02,
            second: 0.05,
        };
        let r1 = residuals_with_steps(a, x, coarse).unwrap();
        let r2 = residuals_with_steps(a, x, coarse.halved()).unwrap();
        let ratio = r1.r_m / r2.r_m;
        assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
        let ratio = r1.r_b / r2.r_b;
        assert!((ratio - 4.0).abs() < 0.5, "{ratio}");
    }
}
