use serde::Serialize;

use super::distribution::DistributionRow;
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityKind {
    /// Constant on each lattice cell.
    Step,
    /// Linear interpolation between lattice nodes.
    PiecewiseAffine,
}

/// A density of `n^{-a} S_n` built from an exact row.
///
/// For [`DensityKind::Step`], `values[i]` is the height on
/// `(breakpoints[i], breakpoints[i+1]]`. For [`DensityKind::PiecewiseAffine`],
/// `values[i]` is the value at `breakpoints[i]`; the density vanishes
/// outside the outermost breakpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepDensity {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
    pub kind: DensityKind,
}

/// Scaled density of the row: `n^a P(n,k)/2` on the cells centred at
/// `n^{-a}(2k-n)`, or the affine interpolation of `P(n, k)` through those
/// centres, normalized to unit mass.
pub fn scaled_density(row: &DistributionRow, a: f64, kind: DensityKind) -> Result<StepDensity> {
    if !(a > 0.5 && a < 1.0) {
        return Err(domain("scaled_density", format!("a = {a} not in (1/2, 1)")));
    }
    let n = row.n as f64;
    let scale = n.powf(-a);
    let centre = |k: usize| scale * (2.0 * k as f64 - n);
    match kind {
        DensityKind::Step => {
            let mut breakpoints: Vec<f64> = (row.k_start..=row.k_end()).map(|k| centre(k) - scale).collect();
            breakpoints.push(centre(row.k_end()) + scale);
            let values = row.probs.iter().map(|p| p / (2.0 * scale)).collect();
            Ok(StepDensity {
                breakpoints,
                values,
                kind,
            })
        }
        DensityKind::PiecewiseAffine => {
            if row.probs.len() < 2 {
                return Err(domain("scaled_density", "the affine density needs at least two lattice points"));
            }
            let first = row.probs[0];
            let last = row.probs[row.probs.len() - 1];
            let norm = 1.0 / (scale * (2.0 - first - last));
            Ok(StepDensity {
                breakpoints: (row.k_start..=row.k_end()).map(centre).collect(),
                values: row.probs.iter().map(|p| p * norm).collect(),
                kind,
            })
        }
    }
}

impl StepDensity {
    /// Density at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let b = &self.breakpoints;
        if b.is_empty() || x <= b[0] || x > b[b.len() - 1] {
            return match self.kind {
                DensityKind::PiecewiseAffine if !b.is_empty() && x == b[0] => self.values[0],
                _ => 0.0,
            };
        }
        // first breakpoint >= x
        let j = b.partition_point(|&t| t < x);
        match self.kind {
            DensityKind::Step => self.values[j - 1],
            DensityKind::PiecewiseAffine => {
                let (x0, x1) = (b[j - 1], b[j]);
                let (v0, v1) = (self.values[j - 1], self.values[j]);
                v0 + (v1 - v0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// `∫_{-∞}^x` of the density.
    pub fn cdf(&self, x: f64) -> f64 {
        let b = &self.breakpoints;
        let mut acc = 0.0;
        for i in 0..b.len().saturating_sub(1) {
            let (x0, x1) = (b[i], b[i + 1]);
            if x <= x0 {
                break;
            }
            let right = x.min(x1);
            acc += match self.kind {
                DensityKind::Step => self.values[i] * (right - x0),
                DensityKind::PiecewiseAffine => {
                    let v_right = self.eval(right);
                    0.5 * (self.values[i] + v_right) * (right - x0)
                }
            };
        }
        acc
    }

    /// Total mass.
    pub fn integral(&self) -> f64 {
        match self.breakpoints.last() {
            Some(&x) => self.cdf(x),
            None => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{distribution_row, ErwParams};

    #[test]
    fn step_density_n1() {
        let row = distribution_row(&ErwParams::from_a(0.75, 1.0).unwrap(), 1).unwrap();
        let d = scaled_density(&row, 0.75, DensityKind::Step).unwrap();
        // S_1 = 1: the single cell is (0, 2]
        assert_eq!(d.breakpoints, vec![0.0, 2.0]);
        assert_eq!(d.values, vec![0.5]);
        assert_eq!(d.eval(1.0), 0.5);
        assert_eq!(d.eval(0.0), 0.0);
        assert_eq!(d.eval(2.0), 0.5);
    }

    #[test]
    fn step_density_n2() {
        let row = distribution_row(&ErwParams::new(0.8, 1.0).unwrap(), 2).unwrap();
        let d = scaled_density(&row, 0.75, DensityKind::Step).unwrap();
        let h = 2f64.powf(0.75) / 2.0;
        assert!((d.values[0] - h * 0.2).abs() < 1e-15);
        assert!((d.values[1] - h * 0.8).abs() < 1e-15);
        assert!((d.integral() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn affine_density_unit_mass() {
        let row = distribution_row(&ErwParams::from_a(0.6, 1.0).unwrap(), 3).unwrap();
        let d = scaled_density(&row, 0.6, DensityKind::PiecewiseAffine).unwrap();
        assert!((d.integral() - 1.0).abs() < 1e-10);
        assert!((d.cdf(1e9) - 1.0).abs() < 1e-10);
        assert!(scaled_density(&row, 0.4, DensityKind::Step).is_err());
    }
}
