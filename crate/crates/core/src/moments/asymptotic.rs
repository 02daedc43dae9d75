use serde::Serialize;

use super::constants::LimitLawContext;
use crate::specfun::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticOrder {
    /// `2a ρ_a^n n! / ((a+1) Γ(1+an))`.
    Leading,
    /// Leading term times `1 + κ_a (δ_a)_n/n! ((-1)^n + (a-1)/(3a+1))`.
    FirstCorrection,
}

fn ln_poch_over_factorial(x: f64, n: usize) -> f64 {
    ln_gamma(x + n as f64) - ln_gamma(x) - ln_gamma(n as f64 + 1.0)
}

/// Logarithm of the large-`n` approximation of `E[L₁ⁿ]`.
pub fn asymptotic_moment_ln(ctx: &LimitLawContext, n: usize, order: AsymptoticOrder) -> f64 {
    let a = ctx.a;
    let nf = n as f64;
    let lead = (2.0 * a / (a + 1.0)).ln() + nf * ctx.rho.ln() + ln_gamma(nf + 1.0) - ln_gamma(1.0 + a * nf);
    match order {
        AsymptoticOrder::Leading => lead,
        AsymptoticOrder::FirstCorrection => {
            let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
            let corr = ctx.kappa * ln_poch_over_factorial(ctx.delta, n).exp() * (parity + (a - 1.0) / (3.0 * a + 1.0));
            lead + corr.ln_1p()
        }
    }
}

/// The large-`n` approximation of `E[L₁ⁿ]`; infinite past the double range.
pub fn asymptotic_moment(ctx: &LimitLawContext, n: usize, order: AsymptoticOrder) -> f64 {
    asymptotic_moment_ln(ctx, n, order).exp()
}

/// Returns `(x)_n/n!` and its two-term approximation `n^{x-1}/Γ(x) (1 + x(x-1)/(2n))`.
pub fn pochhammer_ratio_asymptote(x: f64, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let exact = ln_poch_over_factorial(x, n).exp();
    let approx = ((x - 1.0) * nf.ln() - ln_gamma(x)).exp() * (1.0 + x * (x - 1.0) / (2.0 * nf));
    (exact, approx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{context, moment_sequence};

    #[test]
    fn leading_order_ratio_at_two_thirds() {
        let a = 2.0 / 3.0;
        let ctx = context(a).unwrap();
        let t = moment_sequence(a, 500).unwrap();
        let r = (t.limit_moment_ln(500) - asymptotic_moment_ln(&ctx, 500, AsymptoticOrder::Leading)).exp();
        // mpmath: 1.0011525879...
        assert!((r - 1.001_152_587_9).abs() < 1e-8, "{r}");
        let r1 = (t.limit_moment_ln(500) - asymptotic_moment_ln(&ctx, 500, AsymptoticOrder::FirstCorrection)).exp();
        assert!((r1 - 1.0).abs() < (r - 1.0).abs());
    }

    #[test]
    fn pochhammer_two_term_approximation() {
        let (exact, approx) = pochhammer_ratio_asymptote(0.2, 1000);
        assert!((exact / approx - 1.0).abs() < 1e-6);
    }
}
