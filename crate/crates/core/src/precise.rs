//! Multiple-precision evaluation of the alternating series that lose too
//! many digits in double precision: Mittag-Leffler and Prabhakar functions
//! and `Ψ, ω, ξ, η` at negative arguments.
//!
//! Each routine works at the requested number of decimal digits and checks
//! afterwards that the digits lost to cancellation left at least 17 intact.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{domain, ensure_finite, Error, Result};
use crate::limitlaw::MgfValue;
use crate::specfun::{Method, SeriesEval};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 60;

/// Hard limit on the series length.
const MAX_TERMS: usize = 200_000;

/// Hard limit on the length of the moment series.
const MAX_MGF_TERMS: usize = 20_000;

/// Decimal digits that must survive cancellation.
const KEPT_DIGITS: f64 = 17.0;

fn bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Running alternating-series state at high precision.
struct Accumulator {
    sum: Float,
    abs_sum: Float,
    terms: usize,
}

impl Accumulator {
    fn new(prec: u32) -> Self {
        Accumulator {
            sum: Float::new(prec),
            abs_sum: Float::new(prec),
            terms: 0,
        }
    }

    fn add(&mut self, t: &Float) {
        self.sum += t;
        self.abs_sum += t.clone().abs();
        self.terms += 1;
    }

    /// Decimal digits cancelled: `log10(Σ|t| / |Σ t|)`.
    fn lost_digits(&self) -> f64 {
        if self.sum.is_zero() {
            return f64::INFINITY;
        }
        (self.abs_sum.clone() / self.sum.clone().abs()).log10().to_f64()
    }
}

fn verify(routine: &'static str, acc: &Accumulator, digits: u32) -> Result<f64> {
    let lost = acc.lost_digits();
    if !(lost + KEPT_DIGITS <= digits as f64) {
        return Err(Error::PrecisionLoss {
            routine,
            lost_digits: lost,
            bound: 10f64.powf(lost - digits as f64),
            needed_digits: (lost.max(0.0) + KEPT_DIGITS + 3.0).ceil() as u32,
        });
    }
    Ok(lost)
}

/// Sums `Σ coef_n z^n / Γ(β + αn)` where `coef` gives `coef_n / coef_{n-1}`.
fn entire_series<R>(
    routine: &'static str,
    alpha: f64,
    beta: f64,
    z: f64,
    digits: u32,
    coef_ratio: R,
) -> Result<SeriesEval>
where
    R: Fn(usize, u32) -> Float,
{
    let prec = bits(digits);
    let zf = Float::with_val(prec, z);
    let mut acc = Accumulator::new(prec);
    let mut coef = Float::with_val(prec, 1);
    let mut zn = Float::with_val(prec, 1);
    let eps = Float::with_val(prec, 2).pow(-(prec as i32));
    let mut prev_abs = Float::with_val(prec, f64::INFINITY);
    for n in 0..MAX_TERMS {
        if n > 0 {
            coef *= coef_ratio(n, prec);
            zn *= &zf;
        }
        let g = Float::with_val(prec, beta + alpha * n as f64).gamma();
        let t = Float::with_val(prec, &coef * &zn) / g;
        let abs_t = t.clone().abs();
        let past_peak = abs_t <= prev_abs;
        acc.add(&t);
        if n > 2 && past_peak && abs_t <= Float::with_val(prec, &eps * &acc.abs_sum) {
            let lost = verify(routine, &acc, digits)?;
            let value = acc.sum.to_f64();
            let rounding = value.abs() * 10f64.powf(lost - digits as f64) * acc.terms as f64;
            let err = abs_t.to_f64() + rounding + f64::EPSILON * value.abs();
            return Ok(SeriesEval::new(value, err, acc.terms, Method::Series));
        }
        prev_abs = abs_t;
    }
    Err(Error::NonConvergence {
        routine,
        terms: MAX_TERMS,
        estimate: prev_abs.to_f64(),
    })
}

/// `E_α(z)` at `digits` decimal digits.
pub fn mittag_leffler_precise(alpha: f64, z: f64, digits: u32) -> Result<SeriesEval> {
    ensure_finite("mittag_leffler_precise", "z", z)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain("mittag_leffler_precise", format!("alpha = {alpha} not in (0, 1]")));
    }
    entire_series("mittag_leffler_precise", alpha, 1.0, z, digits, |_, prec| Float::with_val(prec, 1))
}

/// `E^γ_{α,β}(z)` at `digits` decimal digits.
pub fn prabhakar_precise(alpha: f64, beta: f64, gamma: f64, z: f64, digits: u32) -> Result<SeriesEval> {
    ensure_finite("prabhakar_precise", "z", z)?;
    if !(alpha > 0.0 && beta > 0.0 && gamma > 0.0) {
        return Err(domain("prabhakar_precise", "alpha, beta, gamma must all be > 0"));
    }
    // (γ)_n/n! = (γ)_{n-1}/(n-1)! · (γ + n - 1)/n
    entire_series("prabhakar_precise", alpha, beta, z, digits, |n, prec| {
        Float::with_val(prec, gamma + (n - 1) as f64) / n as u32
    })
}

/// `ρ_a` at working precision.
fn rho_precise(a: &Float, prec: u32) -> Float {
    let half = Float::with_val(prec, 0.5);
    let inv2a = Float::with_val(prec, 1) / (Float::with_val(prec, 2) * a);
    let g1 = Float::with_val(prec, &half + &inv2a).gamma();
    let g2 = Float::with_val(prec, 1 - inv2a).gamma();
    let sqrt_pi = Float::with_val(prec, Constant::Pi).sqrt();
    (g1 * g2 / sqrt_pi).pow(a)
}

/// Limit moments `m_n` and `1/Γ(1+an)`, extended on demand.
struct Coefficients {
    a: Float,
    prec: u32,
    m: Vec<Float>,
    inv_gamma: Vec<Float>,
}

impl Coefficients {
    fn new(a: Float, prec: u32) -> Self {
        Coefficients {
            a,
            prec,
            m: vec![Float::with_val(prec, 1), Float::with_val(prec, 1)],
            inv_gamma: Vec::new(),
        }
    }

    fn c(&self, i: usize) -> Float {
        if i % 2 == 0 {
            Float::with_val(self.prec, 1)
        } else {
            self.a.clone()
        }
    }

    fn get(&mut self, n: usize) -> (&Float, &Float) {
        let prec = self.prec;
        while self.m.len() <= n {
            let k = self.m.len();
            let mut s = Float::new(prec);
            for i in 1..k {
                s += self.c(i) * &self.m[i] * &self.m[k - i];
            }
            let denom = Float::with_val(prec, &self.a * k as u32) - self.c(k);
            self.m.push(s / denom);
        }
        while self.inv_gamma.len() <= n {
            let k = self.inv_gamma.len() as u32;
            let arg = Float::with_val(prec, 1) + Float::with_val(prec, &self.a * k);
            self.inv_gamma.push(Float::with_val(prec, 1) / arg.gamma());
        }
        (&self.m[n], &self.inv_gamma[n])
    }
}

/// `Ψ, ω, ξ, η` at `r`, summed at `digits` decimal digits; intended for
/// negative `r` beyond the double-precision range.
pub fn psi_mgf_precise(a: f64, r: f64, digits: u32) -> Result<MgfValue> {
    ensure_finite("psi_mgf_precise", "r", r)?;
    if !(a > crate::moments::MIN_A && a < 1.0) {
        return Err(domain("psi_mgf_precise", format!("a = {a} not in (1/2, 1)")));
    }
    let prec = bits(digits);
    let af = Float::with_val(prec, a);
    let rho = rho_precise(&af, prec);
    let rho64 = rho.to_f64();
    if r < 0.0 && -r > 200.0 * rho64 {
        return Err(domain(
            "psi_mgf_precise",
            format!("|r| = {} beyond the supported 200 rho_a = {}", -r, 200.0 * rho64),
        ));
    }
    // All series terms: the moments m_n and the reciprocal Gamma values.
    let mut coeffs = Coefficients::new(af, prec);

    // Σ m_n u^n/Γ(1+an) with index moments for the tilted law.
    let mut moments_at = |u: &Float| -> Result<(Float, Float, Float, f64, usize)> {
        let mut t0 = Accumulator::new(prec);
        let mut s1 = Float::new(prec);
        let mut s2 = Float::new(prec);
        let mut un = Float::with_val(prec, 1);
        let eps = Float::with_val(prec, 2).pow(-(prec as i32));
        let mut prev = Float::with_val(prec, f64::INFINITY);
        for n in 0..MAX_MGF_TERMS {
            if n > 0 {
                un *= u;
            }
            let (m_n, inv_g) = coeffs.get(n);
            let t = Float::with_val(prec, m_n * &un) * inv_g;
            let abs_t = t.clone().abs();
            t0.add(&t);
            s1 += Float::with_val(prec, &t * n as u32);
            s2 += Float::with_val(prec, &t * (n * n.saturating_sub(1)) as u32);
            let nn = Float::with_val(prec, (n * n + 1) as u32);
            if n > 2 && abs_t <= prev && Float::with_val(prec, &abs_t * &nn) <= Float::with_val(prec, &eps * &t0.abs_sum) {
                let lost = verify("psi_mgf_precise", &t0, digits)?;
                return Ok((t0.sum, s1, s2, lost, n + 1));
            }
            prev = abs_t;
        }
        Err(Error::NonConvergence {
            routine: "psi_mgf_precise",
            terms: MAX_MGF_TERMS,
            estimate: prev.to_f64(),
        })
    };

    let rf = Float::with_val(prec, r);
    // ω(r) = Σ m̃_n r^n/Γ(1+an) = Σ m_n (r/ρ)^n/Γ(1+an)
    let (om, om1, om2, lost_om, used_om) = moments_at(&Float::with_val(prec, &rf / &rho))?;
    let (ps, _, _, lost_ps, used_ps) = moments_at(&rf)?;
    let (m1, g1) = coeffs.get(1);
    let w1 = Float::with_val(prec, m1 * g1) / &rho;
    let (m2, g2) = coeffs.get(2);
    let w2 = Float::with_val(prec, m2 * g2) * 2u32 / Float::with_val(prec, &rho * &rho);
    if !(om.is_sign_positive() && ps.is_sign_positive()) {
        return Err(Error::Inconsistent {
            routine: "psi_mgf_precise",
            difference: om.to_f64(),
            tolerance: 0.0,
        });
    }
    let (xi, eta_sq) = if r == 0.0 {
        let xi = Float::with_val(prec, -&w1);
        let eta_sq = w2 - Float::with_val(prec, &w1 * &w1);
        (xi, eta_sq)
    } else {
        let mean = Float::with_val(prec, &om1 / &om);
        let fall2 = Float::with_val(prec, &om2 / &om);
        let xi = -(mean.clone() / &rf);
        let var_minus_mean = fall2 - Float::with_val(prec, &mean * &mean);
        let eta_sq = var_minus_mean / Float::with_val(prec, &rf * &rf);
        (xi, eta_sq)
    };
    let lost = lost_om.max(lost_ps);
    let rel = 10f64.powf(lost - digits as f64) * used_om.max(used_ps) as f64 + 2.0 * f64::EPSILON;
    Ok(MgfValue {
        r,
        psi: ps.to_f64(),
        ln_psi: ps.clone().ln().to_f64(),
        omega: om.to_f64(),
        ln_omega: om.clone().ln().to_f64(),
        xi: xi.to_f64(),
        eta: eta_sq.to_f64().max(0.0).sqrt(),
        error_estimate: rel,
    })
}
