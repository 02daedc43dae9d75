use serde::Serialize;

use super::distribution::DistributionRow;
use crate::error::{domain, Result};
use crate::numeric::bisect;

/// Relative tolerance of the shape comparisons.
const SHAPE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub unimodal: bool,
    /// First and last index `k` of the maximal plateau.
    pub mode_lo: usize,
    pub mode_hi: usize,
    pub log_concave: bool,
    /// Smallest `k` with `u_k² < u_{k-1} u_{k+1}`.
    pub first_violation: Option<usize>,
}

/// Unimodality and log-concavity of `k -> P(n, k)`, with `u = 0` outside the row.
pub fn check_shape(row: &DistributionRow) -> ShapeReport {
    let u = &row.probs;
    let top = u.iter().copied().fold(0.0_f64, f64::max);
    let tol = SHAPE_TOL * top;
    let lo = u.iter().position(|&v| v >= top - tol).unwrap_or(0);
    let hi = u.iter().rposition(|&v| v >= top - tol).unwrap_or(0);
    let rising = u[..=lo].windows(2).all(|w| w[1] >= w[0] - tol);
    let falling = u[hi..].windows(2).all(|w| w[1] <= w[0] + tol);
    let plateau = u[lo..=hi].iter().all(|&v| v >= top - tol);
    let at = |i: isize| -> f64 {
        if i < 0 || i as usize >= u.len() {
            0.0
        } else {
            u[i as usize]
        }
    };
    let first_violation = (0..u.len() as isize)
        .find(|&i| {
            let sq = at(i) * at(i);
            let cross = at(i - 1) * at(i + 1);
            sq < cross - SHAPE_TOL * sq.max(cross)
        })
        .map(|i| row.k_start + i as usize);
    ShapeReport {
        unimodal: rising && falling && plateau,
        mode_lo: row.k_start + lo,
        mode_hi: row.k_start + hi,
        log_concave: first_violation.is_none(),
        first_violation,
    }
}

/// Coefficients, lowest degree first, of the threshold polynomials `P_0 .. P_3`
/// whose roots in `(1/2, 1)` bound the log-concavity region of the rows.
const POLYNOMIALS: [&[f64]; 4] = [
    &[3.0, -2.0, -4.0, -1.0],
    &[54.0, 36.0, -83.0, -123.0, -63.0, -13.0],
    &[360.0, 834.0, 247.0, -1259.0, -2009.0, -1423.0, -514.0, -76.0],
    &[11250.0, 8325.0, -13781.0, -24282.0, -13396.0, -1024.0, 2518.0, 1361.0, 229.0],
];

/// Evaluates `P_index` at `x`.
pub fn log_concavity_polynomial(index: usize, x: f64) -> Result<f64> {
    let coeffs = POLYNOMIALS
        .get(index)
        .ok_or_else(|| domain("log_concavity_polynomial", format!("index {index} not in 0..=3")))?;
    Ok(coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c))
}

/// The root in `(1/2, 1)` of `P_index`, to `1e-10`.
pub fn log_concavity_root(index: usize) -> Result<f64> {
    log_concavity_polynomial(index, 0.5)?;
    bisect(|x| log_concavity_polynomial(index, x).unwrap_or(f64::NAN), 0.5, 1.0, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{distribution_row, ErwParams};

    fn row(v: &[f64]) -> DistributionRow {
        DistributionRow {
            n: v.len(),
            k_start: 1,
            probs: v.to_vec(),
        }
    }

    #[test]
    fn singleton_and_small_rows() {
        let r = check_shape(&row(&[1.0]));
        assert!(r.unimodal && r.log_concave);
        let r = check_shape(&row(&[0.1, 0.26, 0.64]));
        assert!(r.unimodal && r.log_concave);
        assert_eq!((r.mode_lo, r.mode_hi), (3, 3));
    }

    #[test]
    fn violation_above_threshold() {
        let params = ErwParams::from_a(0.70, 1.0).unwrap();
        let r = check_shape(&distribution_row(&params, 3).unwrap());
        assert!(r.unimodal);
        assert!(!r.log_concave);
        assert_eq!(r.first_violation, Some(2));
    }

    #[test]
    fn bimodal_and_plateau() {
        let r = check_shape(&row(&[0.3, 0.1, 0.3, 0.3]));
        assert!(!r.unimodal);
        let r = check_shape(&row(&[0.2, 0.4, 0.4]));
        assert!(r.unimodal);
        assert_eq!((r.mode_lo, r.mode_hi), (2, 3));
        // interior zero breaks log-concavity
        let r = check_shape(&row(&[0.5, 0.0, 0.5]));
        assert!(!r.log_concave);
    }

    #[test]
    fn roots() {
        let expected = [0.61803, 0.63606, 0.67060, 0.68408];
        for (i, e) in expected.iter().enumerate() {
            assert!((log_concavity_root(i).unwrap() - e).abs() < 5e-5);
        }
        assert!(log_concavity_root(4).is_err());
    }
}
