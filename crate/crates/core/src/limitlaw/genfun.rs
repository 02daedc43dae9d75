use serde::Serialize;

use crate::error::{domain, ensure_finite, Result};
use crate::moments::{rho, MomentTable};
use crate::specfun::{f_inverse, ln_rho_root};

/// `G, B, A, M` at one point of `(0, 1/ρ_a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenFunValue {
    pub x: f64,
    pub g: f64,
    /// Odd part `B(x) = Σ m_{2n+1} x^{2n+1}`.
    pub b: f64,
    /// Even part `A(x) = Σ m_{2n} x^{2n}`.
    pub a_even: f64,
    /// `M(x) = A(x) + B(x)`.
    pub m: f64,
}

impl GenFunValue {
    /// `M(-x) = A(x) - B(x)`.
    pub fn m_reflected(&self) -> f64 {
        self.a_even - self.b
    }
}

/// Gap kept below the pole `1/ρ_a`.
const POLE_GAP: f64 = 1e-12;

/// Closed form `G = F^{-1}(x^{-1/a} - ρ_a^{1/a})`, `B = x (G/x)^{(a+1)/a}`,
/// `A = (G/x)^{1/a} √(1+G²)`.
pub fn genfun(a: f64, x: f64) -> Result<GenFunValue> {
    ensure_finite("genfun", "x", x)?;
    let rho = rho(a)?;
    if !(x > 0.0 && x < 1.0 / rho - POLE_GAP) {
        return Err(domain("genfun", format!("x = {x} not in (0, 1/rho_a) = (0, {})", 1.0 / rho)));
    }
    // x^{-1/a} - ρ^{1/a} = ρ^{1/a} (exp(-ln(ρx)/a) - 1), accurate near the pole
    let y = ln_rho_root(a).exp() * (-(rho * x).ln() / a).exp_m1();
    let g = f_inverse(a, y)?;
    let ratio = g / x;
    let b = x * ratio.powf((a + 1.0) / a);
    let a_even = ratio.powf(1.0 / a) * g.hypot(1.0);
    Ok(GenFunValue {
        x,
        g,
        b,
        a_even,
        m: a_even + b,
    })
}

/// Truncated power series `Σ_{n<=n_max} m_n x^n` from a moment table.
pub fn genfun_series(table: &MomentTable, x: f64, n_max: usize) -> f64 {
    let s = table.scaled();
    let rx = table.rho() * x;
    let mut acc = 0.0;
    for n in (0..=n_max.min(table.n_max())).rev() {
        acc = acc * rx + s[n];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::moment_sequence;

    #[test]
    fn agrees_with_power_series() {
        let a = 2.0 / 3.0;
        let table = moment_sequence(a, 80).unwrap();
        let x = 0.3 / table.rho();
        let v = genfun(a, x).unwrap();
        let s = genfun_series(&table, x, 60);
        assert!((v.m - s).abs() < 1e-10, "{} vs {s}", v.m);
    }

    #[test]
    fn behaviour_at_origin_and_pole() {
        let a = 0.8;
        let v = genfun(a, 1e-6).unwrap();
        assert!((v.b / v.x - 1.0).abs() < 1e-5);
        assert!((v.m - 1.0).abs() < 1e-5);
        let r = rho(a).unwrap();
        let near = genfun(a, (1.0 - 1e-6) / r).unwrap();
        assert!(near.b > 1e5);
        assert!(genfun(a, 1.0 / r).is_err());
        assert!(genfun(a, 0.0).is_err());
    }
}
