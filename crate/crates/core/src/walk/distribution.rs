use serde::Serialize;

use super::params::ErwParams;
use crate::error::{domain, Error, Result};

/// Largest tolerated drift of a row sum before renormalization.
const DRIFT_TOL: f64 = 1e-9;

/// Exact law of `S_n`: `probs[i] = P[S_n = 2k - n]` with `k = k_start + i`.
///
/// Rows of a walk whose first step is `+1` have `k = 1..=n`; otherwise the
/// row also carries `k = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionRow {
    pub n: usize,
    pub k_start: usize,
    pub probs: Vec<f64>,
}

impl DistributionRow {
    /// Last index `k` carried by the row.
    pub fn k_end(&self) -> usize {
        self.k_start + self.probs.len() - 1
    }

    /// `P(n, k)`, zero outside the stored range.
    pub fn prob(&self, k: usize) -> f64 {
        if k < self.k_start {
            return 0.0;
        }
        self.probs.get(k - self.k_start).copied().unwrap_or(0.0)
    }

    /// `(k, s = 2k - n, P(n, k))` triples.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, f64)> + '_ {
        self.probs.iter().enumerate().map(move |(i, &pr)| {
            let k = self.k_start + i;
            (k, 2 * k as i64 - self.n as i64, pr)
        })
    }

    /// `Σ_k (2k - n) P(n, k)`.
    pub fn mean(&self) -> f64 {
        self.iter().map(|(_, s, pr)| s as f64 * pr).sum()
    }

    /// Mirror image `S_n -> -S_n`.
    pub fn reflect(&self) -> DistributionRow {
        // k -> n - k
        let k_start = self.n - self.k_end();
        let probs = self.probs.iter().rev().copied().collect();
        DistributionRow {
            n: self.n,
            k_start,
            probs,
        }
    }

    /// `P[n^{-a} S_n <= x]`.
    pub fn scaled_cdf(&self, a: f64, x: f64) -> f64 {
        let scale = (self.n as f64).powf(-a);
        self.iter()
            .take_while(|&(_, s, _)| s as f64 * scale <= x)
            .map(|(_, _, pr)| pr)
            .sum::<f64>()
            .min(1.0)
    }
}

/// `E[S_n]` from `E[S_{n+1}] = (1 + a/n) E[S_n]`, `E[S_1] = 2q - 1`.
pub fn mean_position(params: &ErwParams, n: usize) -> f64 {
    let mut m = 2.0 * params.q_first() - 1.0;
    for j in 1..n {
        m *= 1.0 + params.a() / j as f64;
    }
    m
}

/// Streams the rows `n = 1, 2, ...` of a walk whose first step is `+1`.
#[derive(Debug, Clone)]
pub struct DistributionEvolver {
    p: f64,
    a: f64,
    n: usize,
    row: Vec<f64>,
    next: Vec<f64>,
}

impl DistributionEvolver {
    pub fn new(params: &ErwParams) -> Self {
        DistributionEvolver {
            p: params.p(),
            a: params.a(),
            n: 0,
            row: Vec::new(),
            next: Vec::new(),
        }
    }

    /// Current time; zero before the first call to [`advance`](Self::advance).
    pub fn n(&self) -> usize {
        self.n
    }

    /// `P(n, k)` for `k = 1..=n` at the current time.
    pub fn probs(&self) -> &[f64] {
        &self.row
    }

    /// Moves to the next time step.
    pub fn advance(&mut self) -> Result<()> {
        if self.n == 0 {
            self.row = vec![1.0];
            self.n = 1;
            return Ok(());
        }
        let n = self.n;
        let nf = n as f64;
        let (p, a) = (self.p, self.a);
        self.next.clear();
        self.next.resize(n + 1, 0.0);
        // P(n+1, k) = [(np - ak) P(n,k) + ((1-p)n + a(k-1)) P(n,k-1)] / n, k = 1..=n+1
        for k in 1..=n + 1 {
            let kf = k as f64;
            let stay = if k <= n { (nf * p - a * kf) * self.row[k - 1] } else { 0.0 };
            let up = if k >= 2 {
                ((1.0 - p) * nf + a * (kf - 1.0)) * self.row[k - 2]
            } else {
                0.0
            };
            self.next[k - 1] = (stay + up) / nf;
        }
        let total: f64 = self.next.iter().sum();
        if (total - 1.0).abs() > DRIFT_TOL || !total.is_finite() {
            return Err(Error::Inconsistent {
                routine: "evolve_distribution",
                difference: (total - 1.0).abs(),
                tolerance: DRIFT_TOL,
            });
        }
        for v in self.next.iter_mut() {
            *v /= total;
        }
        std::mem::swap(&mut self.row, &mut self.next);
        self.n += 1;
        Ok(())
    }

    /// The current row mixed for the first-step parameter of `params`.
    pub fn row(&self, q_first: f64) -> DistributionRow {
        let plus = DistributionRow {
            n: self.n,
            k_start: 1,
            probs: self.row.clone(),
        };
        mix(plus, q_first)
    }
}

/// `q · row + (1 - q) · reflect(row)` for a row of the `+1`-started walk.
fn mix(plus: DistributionRow, q: f64) -> DistributionRow {
    if q == 1.0 {
        return plus;
    }
    let n = plus.n;
    let minus = plus.reflect();
    let probs = (0..=n).map(|k| q * plus.prob(k) + (1.0 - q) * minus.prob(k)).collect();
    DistributionRow { n, k_start: 0, probs }
}

fn check_params(routine: &'static str, n_max: usize) -> Result<()> {
    if n_max < 1 {
        return Err(domain(routine, "n_max must be >= 1"));
    }
    Ok(())
}

/// Rows `n = 1..=n_max` of the exact distribution of `S_n`.
pub fn evolve_distribution(params: &ErwParams, n_max: usize) -> Result<Vec<DistributionRow>> {
    check_params("evolve_distribution", n_max)?;
    let mut ev = DistributionEvolver::new(params);
    let mut rows = Vec::with_capacity(n_max);
    for _ in 0..n_max {
        ev.advance()?;
        rows.push(ev.row(params.q_first()));
    }
    Ok(rows)
}

/// The single row at time `n`, without keeping the earlier ones.
pub fn distribution_row(params: &ErwParams, n: usize) -> Result<DistributionRow> {
    check_params("distribution_row", n)?;
    let mut ev = DistributionEvolver::new(params);
    for _ in 0..n {
        ev.advance()?;
    }
    Ok(ev.row(params.q_first()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        let params = ErwParams::new(0.8, 1.0).unwrap();
        let rows = evolve_distribution(&params, 3).unwrap();
        assert_eq!(rows[0].probs, vec![1.0]);
        assert!((rows[1].prob(2) - 0.8).abs() < 1e-15);
        assert!((rows[1].prob(1) - 0.2).abs() < 1e-15);
        let expected = [0.1, 0.26, 0.64];
        for (k, e) in expected.iter().enumerate() {
            assert!((rows[2].prob(k + 1) - e).abs() < 1e-15);
        }
    }

    #[test]
    fn mixture_rows() {
        let params = ErwParams::new(0.8, 0.25).unwrap();
        let row = distribution_row(&params, 2).unwrap();
        // S_2 = 2 needs a +1 first step copied; S_2 = -2 the mirror event.
        assert_eq!(row.k_start, 0);
        assert_eq!(row.probs.len(), 3);
        assert!((row.prob(2) - 0.25 * 0.8).abs() < 1e-15);
        assert!((row.prob(0) - 0.75 * 0.8).abs() < 1e-15);
        assert!((row.prob(1) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn mean_matches_product_formula() {
        for &q in &[1.0, 0.3] {
            let params = ErwParams::new(0.85, q).unwrap();
            let row = distribution_row(&params, 400).unwrap();
            assert!((row.mean() - mean_position(&params, 400)).abs() < 1e-10);
        }
    }

    #[test]
    fn reflect_and_cdf() {
        let params = ErwParams::new(0.9, 1.0).unwrap();
        let row = distribution_row(&params, 5).unwrap();
        let r = row.reflect();
        assert_eq!(r.k_start, 0);
        assert_eq!(r.prob(0), row.prob(5));
        assert!((row.scaled_cdf(0.8, 100.0) - 1.0).abs() < 1e-15);
        assert_eq!(row.scaled_cdf(0.8, -100.0), 0.0);
    }

    #[test]
    fn rejects_empty() {
        let params = ErwParams::new(0.9, 1.0).unwrap();
        assert!(evolve_distribution(&params, 0).is_err());
    }
}
