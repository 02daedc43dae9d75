use serde::Serialize;

use super::Side;
use crate::moments::LimitLawContext;
use crate::specfun::ln_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailKind {
    Positive,
    Negative,
    /// Positive over negative tail; the exponential factors cancel.
    Ratio,
    /// Density of `L_q` at `±x` for a first-step parameter `q`.
    QMix,
}

/// `prefactor · x^power · exp(-stretch · x^stretch_power)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailAsymptote {
    pub side: TailKind,
    pub prefactor: f64,
    pub power: f64,
    /// `(1-a)(a^a/ρ_a)^{1/(1-a)}`; zero for [`TailKind::Ratio`].
    pub stretch: f64,
    /// `1/(1-a)`.
    pub stretch_power: f64,
    pub q: Option<f64>,
}

impl TailAsymptote {
    /// Natural logarithm of the asymptote at `x > 0`; `-∞` once it underflows.
    pub fn ln_eval(&self, x: f64) -> f64 {
        if self.prefactor <= 0.0 {
            return f64::NEG_INFINITY;
        }
        self.prefactor.ln() + self.power * x.ln() - self.stretch * x.powf(self.stretch_power)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.ln_eval(x).exp()
    }
}

fn stretch(ctx: &LimitLawContext) -> (f64, f64) {
    let a = ctx.a;
    let sp = 1.0 / (1.0 - a);
    ((1.0 - a) * ((a * a.ln() - ctx.rho.ln()) * sp).exp(), sp)
}

/// Exponent of `x` in the right tail, `(2a-1)/(2(1-a))`.
fn power_pos(a: f64) -> f64 {
    (2.0 * a - 1.0) / (2.0 * (1.0 - a))
}

/// Exponent of `x` in the left tail, `(2a²-3a-1)/(2(1-a²))`.
fn power_neg(a: f64) -> f64 {
    (2.0 * a * a - 3.0 * a - 1.0) / (2.0 * (1.0 - a * a))
}

/// Asymptote of the density of `L₁` at `+x` or `-x`, or, with `q` given,
/// of `L_q`: its right tail is `q` times and its left tail `1-q` times the
/// right tail of `L₁`.
pub fn tail_asymptote(ctx: &LimitLawContext, side: Side, q: Option<f64>) -> TailAsymptote {
    let a = ctx.a;
    let (stretch, stretch_power) = stretch(ctx);
    match (side, q) {
        (Side::Positive, None) => TailAsymptote {
            side: TailKind::Positive,
            prefactor: ctx.c_pos,
            power: power_pos(a),
            stretch,
            stretch_power,
            q: None,
        },
        (Side::Negative, None) => TailAsymptote {
            side: TailKind::Negative,
            prefactor: ctx.c_neg,
            power: power_neg(a),
            stretch,
            stretch_power,
            q: None,
        },
        (side, Some(q)) => TailAsymptote {
            side: TailKind::QMix,
            prefactor: ctx.c_pos * if side == Side::Positive { q } else { 1.0 - q },
            power: power_pos(a),
            stretch,
            stretch_power,
            q: Some(q),
        },
    }
}

/// `ln` of the tail asymptote at distance `x > 0` from the origin.
pub fn tail_ln(ctx: &LimitLawContext, x: f64, side: Side, q: Option<f64>) -> f64 {
    tail_asymptote(ctx, side, q).ln_eval(x)
}

pub fn tail(ctx: &LimitLawContext, x: f64, side: Side, q: Option<f64>) -> f64 {
    tail_ln(ctx, x, side, q).exp()
}

/// Ratio of the right to the left tail of `L₁`:
/// `4Γ(δ_a)(a+1)^{-2a/(1+a)} (a/ρ_a^{1/a})^{2a/(1-a²)} x^{2a/(1-a²)}`.
///
/// This is `c_a/ĉ_a` with the two power laws combined.
pub fn tail_ratio_asymptote(ctx: &LimitLawContext) -> TailAsymptote {
    let a = ctx.a;
    let e = 2.0 * a / (1.0 - a * a);
    let ln_pref = 4f64.ln() + ln_gamma(ctx.delta) - 2.0 * a / (1.0 + a) * (a + 1.0).ln()
        + e * (a.ln() - ctx.rho.ln() / a);
    TailAsymptote {
        side: TailKind::Ratio,
        prefactor: ln_pref.exp(),
        power: e,
        stretch: 0.0,
        stretch_power: stretch(ctx).1,
        q: None,
    }
}

/// `ln` of the ratio formula with base `a/ρ_a^{2-1/a}`, which differs
/// from `c_a/ĉ_a` by the factor `ρ_a^{4/(1+a)}`.
pub fn tail_ratio_printed_ln(ctx: &LimitLawContext, x: f64) -> f64 {
    let a = ctx.a;
    let e = 2.0 * a / (1.0 - a * a);
    4f64.ln() + ln_gamma(ctx.delta) - 2.0 * a / (1.0 + a) * (a + 1.0).ln()
        + e * (a.ln() - (2.0 - 1.0 / a) * ctx.rho.ln())
        + e * x.ln()
}
