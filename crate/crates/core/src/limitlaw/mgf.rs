use serde::Serialize;

use super::Side;
use crate::error::{domain, ensure_finite, Error, Result};
use crate::moments::{moment_sequence, MomentTable};
use crate::numeric::{CompensatedSum, LogSum};
use crate::specfun::ln_gamma;

/// Negative arguments are refused in double precision beyond `NEGATIVE_CAP · ρ_a`.
pub const NEGATIVE_CAP: f64 = 30.0;

/// Largest relative rounding bound accepted for alternating sums.
const CANCELLATION_BUDGET: f64 = 1e-6;

/// `Ψ(r) = E[e^{r L₁}]`, `ω(r) = Ψ(r/ρ_a)` and the tilted mean and spread
/// `ξ = -ω'/ω`, `η = √(ω''/ω - ξ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MgfValue {
    pub r: f64,
    pub psi: f64,
    pub ln_psi: f64,
    pub omega: f64,
    pub ln_omega: f64,
    pub xi: f64,
    pub eta: f64,
    /// Relative error bound covering truncation and rounding.
    pub error_estimate: f64,
}

/// The power series `ω(s) = Σ m̃_n s^n / Γ(1+an)` and its first two
/// derivatives, summed from a cached moment table.
#[derive(Debug, Clone)]
pub struct MgfEvaluator {
    table: MomentTable,
    ln_gamma: Vec<f64>,
}

/// Value of `ω` and the tilted functionals at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Tilted {
    pub ln_omega: f64,
    pub xi: f64,
    pub eta_sq: f64,
    pub rel_error: f64,
}

/// Number of series terms needed for `|s| <= s_max`: the terms peak near
/// `n = s^{1/a}/a` and have Gaussian width of order `√n`.
fn terms_for(a: f64, s_max: f64) -> usize {
    let peak = s_max.abs().powf(1.0 / a) / a;
    (2.0 * peak + 40.0 * peak.sqrt() + 60.0).ceil() as usize
}

impl MgfEvaluator {
    /// An evaluator valid for `ω` arguments `|s| <= s_max`.
    pub fn new(a: f64, s_max: f64) -> Result<Self> {
        ensure_finite("psi_mgf", "r", s_max)?;
        let table = moment_sequence(a, terms_for(a, s_max).max(8))?;
        let ln_gamma = (0..=table.n_max()).map(|n| ln_gamma(1.0 + a * n as f64)).collect();
        Ok(MgfEvaluator { table, ln_gamma })
    }

    pub fn table(&self) -> &MomentTable {
        &self.table
    }

    /// `ln |m̃_n s^n / Γ(1+an)|`.
    fn ln_term(&self, n: usize, ln_abs_s: f64) -> f64 {
        self.table.scaled()[n].ln() + n as f64 * ln_abs_s - self.ln_gamma[n]
    }

    pub(crate) fn tilted(&self, s: f64) -> Result<Tilted> {
        let sc = self.table.scaled();
        let a = self.table.a();
        if s == 0.0 {
            let w1 = sc[1] / self.ln_gamma[1].exp();
            let w2 = 2.0 * sc[2] / self.ln_gamma[2].exp();
            return Ok(Tilted {
                ln_omega: 0.0,
                xi: -w1,
                eta_sq: w2 - w1 * w1,
                rel_error: 4.0 * f64::EPSILON,
            });
        }
        let needed = terms_for(a, s);
        if needed > self.table.n_max() {
            return Err(domain(
                "psi_mgf",
                format!("argument {s} needs {needed} terms, evaluator holds {}", self.table.n_max()),
            ));
        }
        if s > 0.0 {
            self.tilted_positive(s)
        } else {
            self.tilted_negative(s)
        }
    }

    fn tilted_positive(&self, s: f64) -> Result<Tilted> {
        let ln_s = s.ln();
        let mut logs = Vec::new();
        let mut acc = LogSum::new();
        let mut tail = None;
        for n in 0..=self.table.n_max() {
            let lt = self.ln_term(n, ln_s);
            if n > 2 && lt < logs[n - 1] && lt < acc.ln() - 40.0 {
                let q = (lt - logs[n - 1] as f64).exp();
                tail = Some((lt - acc.ln()).exp() / (1.0 - q));
                break;
            }
            acc.add_ln(lt);
            logs.push(lt);
        }
        let tail = tail.ok_or(Error::NonConvergence {
            routine: "psi_mgf",
            terms: self.table.n_max(),
            estimate: 1.0,
        })?;
        let ln_omega = acc.ln();
        // Weights of the tilted law of the term index, then mean and variance in two passes.
        let w: Vec<f64> = logs.iter().map(|l| (l - ln_omega).exp()).collect();
        let mean: f64 = w.iter().enumerate().map(|(n, wn)| n as f64 * wn).sum();
        let var: f64 = w.iter().enumerate().map(|(n, wn)| (n as f64 - mean).powi(2) * wn).sum();
        let max_log = logs.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
        Ok(Tilted {
            ln_omega,
            xi: -mean / s,
            eta_sq: (var - mean) / (s * s),
            rel_error: tail + 4.0 * f64::EPSILON * (1.0 + max_log) * (1.0 + mean),
        })
    }

    fn tilted_negative(&self, s: f64) -> Result<Tilted> {
        let ln_abs = s.abs().ln();
        let (mut t0, mut t1, mut t2) = (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
        let mut prev = f64::INFINITY;
        let mut last = 0.0;
        let mut converged = false;
        let mut term_err = 0.0;
        for n in 0..=self.table.n_max() {
            let lt = self.ln_term(n, ln_abs);
            let mag = lt.exp();
            if n > 2 && lt < prev && mag * (n * n) as f64 <= 1e-17 * t0.value().abs().min(t0.abs_sum()) {
                last = mag;
                converged = true;
                break;
            }
            let t = if n % 2 == 1 { -mag } else { mag };
            let nf = n as f64;
            t0.add(t);
            t1.add(nf * t);
            t2.add(nf * (nf - 1.0) * t);
            term_err += 4.0 * f64::EPSILON * (1.0 + lt.abs()) * mag * (1.0 + nf * nf);
            prev = lt;
        }
        if !converged {
            return Err(Error::NonConvergence {
                routine: "psi_mgf",
                terms: self.table.n_max(),
                estimate: prev.exp(),
            });
        }
        let omega = t0.value();
        let rel = [&t0, &t1, &t2]
            .iter()
            .map(|c| c.cancellation_bound())
            .fold(0.0, f64::max)
            + (term_err + last) / omega.abs();
        if !(omega > 0.0) || rel > CANCELLATION_BUDGET {
            let lost = (t0.abs_sum() / omega.abs()).log10();
            return Err(Error::PrecisionLoss {
                routine: "psi_mgf",
                lost_digits: lost,
                bound: rel,
                needed_digits: (lost.max(0.0) + 20.0).ceil() as u32,
            });
        }
        let m1 = t1.value() / omega;
        let m2 = t2.value() / omega;
        Ok(Tilted {
            ln_omega: omega.ln(),
            xi: -m1 / s,
            eta_sq: (m2 - m1 * m1) / (s * s),
            rel_error: rel,
        })
    }

    /// Evaluates every field of [`MgfValue`] at `r`.
    pub fn eval(&self, r: f64) -> Result<MgfValue> {
        ensure_finite("psi_mgf", "r", r)?;
        let rho = self.table.rho();
        if r < 0.0 && -r > NEGATIVE_CAP * rho {
            return Err(Error::PrecisionLoss {
                routine: "psi_mgf",
                lost_digits: f64::NAN,
                bound: f64::INFINITY,
                needed_digits: 0,
            });
        }
        let om = self.tilted(r)?;
        let ps = self.tilted(rho * r)?;
        let eta_sq_floor = -om.rel_error * om.xi * om.xi;
        if om.eta_sq < eta_sq_floor {
            return Err(Error::Inconsistent {
                routine: "psi_mgf",
                difference: om.eta_sq,
                tolerance: eta_sq_floor.abs(),
            });
        }
        Ok(MgfValue {
            r,
            psi: ps.ln_omega.exp(),
            ln_psi: ps.ln_omega,
            omega: om.ln_omega.exp(),
            ln_omega: om.ln_omega,
            xi: om.xi,
            eta: om.eta_sq.max(0.0).sqrt(),
            error_estimate: om.rel_error.max(ps.rel_error),
        })
    }
}

/// `Ψ, ω, ξ, η` at `r`; builds a moment table sized for the argument.
pub fn psi_mgf(a: f64, r: f64) -> Result<MgfValue> {
    ensure_finite("psi_mgf", "r", r)?;
    let rho = crate::moments::rho(a)?;
    MgfEvaluator::new(a, rho * r.abs())?.eval(r)
}

/// Leading large-`r` form `√(1-a) r^{1/(2a)-1} / a` of `η(±r)`; the
/// constant is the same on both half-lines.
pub fn eta_asymptote(a: f64, r: f64, _side: Side) -> f64 {
    (1.0 - a).sqrt() * r.powf(0.5 / a - 1.0) / a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{limit_moment, rho};

    #[test]
    fn value_at_origin() {
        let a = 0.75;
        let v = psi_mgf(a, 0.0).unwrap();
        assert_eq!(v.psi, 1.0);
        let expected = -limit_moment(a, 1).unwrap() / rho(a).unwrap();
        assert!((v.xi - expected).abs() < 1e-14);
    }

    #[test]
    fn small_argument_matches_moments() {
        // Ψ(r) ≈ 1 + E[L] r + E[L²] r²/2 for small r
        let a = 0.7;
        let r = 1e-3;
        let v = psi_mgf(a, r).unwrap();
        let approx = 1.0 + limit_moment(a, 1).unwrap() * r + limit_moment(a, 2).unwrap() * r * r / 2.0;
        assert!((v.psi - approx).abs() < 1e-9);
        let w = psi_mgf(a, -r).unwrap();
        let approx = 1.0 - limit_moment(a, 1).unwrap() * r + limit_moment(a, 2).unwrap() * r * r / 2.0;
        assert!((w.psi - approx).abs() < 1e-9);
    }

    #[test]
    fn both_sides_agree_near_origin() {
        // the signed and log-domain sums meet continuously at 0
        let a = 0.8;
        let p = psi_mgf(a, 1e-9).unwrap();
        let n = psi_mgf(a, -1e-9).unwrap();
        assert!((p.xi - n.xi).abs() < 1e-6);
        assert!((p.eta - n.eta).abs() < 1e-6);
    }

    #[test]
    fn large_negative_needs_high_precision() {
        let a = 0.75;
        assert!(matches!(psi_mgf(a, -40.0), Err(Error::PrecisionLoss { .. })));
    }

    #[test]
    fn eta_closed_form() {
        let v = eta_asymptote(0.75, 16.0, Side::Positive);
        assert!((v - 2.0 / (3.0 * 16f64.cbrt())).abs() < 1e-15);
        let ratio = eta_asymptote(0.6, 10.0, Side::Negative) / eta_asymptote(0.6, 5.0, Side::Negative);
        assert!((ratio - 2f64.powf(0.5 / 0.6 - 1.0)).abs() < 1e-14);
    }
}
