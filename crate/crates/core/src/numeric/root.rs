//! Bracketed scalar root finders.

use crate::error::{Error, Result};

/// Plain bisection on `[lo, hi]`; `f(lo)` and `f(hi)` must have opposite signs.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, x_tol: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Bracketing {
            routine: "bisect",
            detail: format!("f({lo}) = {f_lo}, f({hi}) = {f_hi}"),
        });
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton iteration safeguarded by a bisection bracket.
///
/// `fdf` returns `(f(x), f'(x))`. The bracket `[lo, hi]` must change sign.
/// Newton steps leaving the bracket, or not halving it fast enough, fall
/// back to bisection.
pub fn newton_bracketed<F>(fdf: F, mut lo: f64, mut hi: f64, x_tol: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (f_lo, _) = fdf(lo);
    let (f_hi, _) = fdf(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Bracketing {
            routine: "newton_bracketed",
            detail: format!("f({lo}) = {f_lo}, f({hi}) = {f_hi}"),
        });
    }
    // Orient so that f(lo) < 0 < f(hi).
    if f_lo > 0.0 {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut x = 0.5 * (lo + hi);
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    let (mut fx, mut dfx) = fdf(x);
    for _ in 0..max_iter {
        let newton_leaves = ((x - hi) * dfx - fx) * ((x - lo) * dfx - fx) > 0.0;
        let slow = (2.0 * fx).abs() > (dx_old * dfx).abs();
        if newton_leaves || slow || dfx == 0.0 || !dfx.is_finite() {
            dx_old = dx;
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx_old = dx;
            dx = fx / dfx;
            x -= dx;
        }
        if dx.abs() <= x_tol * x.abs().max(f64::MIN_POSITIVE) {
            return Ok(x);
        }
        let next = fdf(x);
        fx = next.0;
        dfx = next.1;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
    }
    Err(Error::NonConvergence {
        routine: "newton_bracketed",
        terms: max_iter,
        estimate: dx.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_requires_sign_change() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::Bracketing { .. })
        ));
    }

    #[test]
    fn newton_converges_from_either_orientation() {
        let fdf = |x: f64| (x.cos() - x, -x.sin() - 1.0);
        let r1 = newton_bracketed(fdf, 0.0, 1.0, 1e-15, 100).unwrap();
        let r2 = newton_bracketed(fdf, 1.0, 0.0, 1e-15, 100).unwrap();
        assert!((r1 - 0.739_085_133_215_160_6).abs() < 1e-14);
        assert!((r1 - r2).abs() < 1e-14);
    }
}
