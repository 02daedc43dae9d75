use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::distribution::DistributionRow;
use super::params::ErwParams;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    /// Largest accepted `count * n`, i.e. total number of simulated steps.
    pub step_budget: u128,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            step_budget: 100_000_000_000,
            threads: None,
        }
    }
}

/// One trajectory: every step after the first copies a uniformly chosen
/// past step with probability `p` and reverses it otherwise.
fn trajectory(params: &ErwParams, n: usize, rng: &mut ChaCha8Rng, history: &mut Vec<i8>) -> i64 {
    history.clear();
    let first: i8 = if rng.random::<f64>() < params.q_first() { 1 } else { -1 };
    history.push(first);
    let mut s = first as i64;
    for t in 1..n {
        let past = history[rng.random_range(0..t)];
        let step = if rng.random::<f64>() < params.p() { past } else { -past };
        history.push(step);
        s += step as i64;
    }
    s
}

/// Terminal positions `S_n` of `count` independent trajectories.
///
/// Trajectory `i` draws from the ChaCha8 stream `i` of the generator keyed
/// by `seed`, so the output does not depend on the thread count.
pub fn simulate_positions(
    params: &ErwParams,
    n: usize,
    count: usize,
    seed: u64,
    cfg: &SimConfig,
) -> Result<Vec<i64>> {
    if n < 1 || count < 1 {
        return Err(domain("simulate", format!("n = {n} and count = {count} must be >= 1")));
    }
    let requested = n as u128 * count as u128;
    if requested > cfg.step_budget {
        return Err(Error::Budget {
            requested,
            budget: cfg.step_budget,
        });
    }
    let run = || -> Vec<i64> {
        (0..count)
            .into_par_iter()
            .map_init(
                || Vec::with_capacity(n),
                |history, i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i as u64);
                    trajectory(params, n, &mut rng, history)
                },
            )
            .collect()
    };
    match cfg.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| domain("simulate", format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

/// Samples of `n^{-a} S_n` with the default configuration.
pub fn simulate_terminal(params: &ErwParams, n: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
    simulate_terminal_with(params, n, count, seed, &SimConfig::default())
}

pub fn simulate_terminal_with(
    params: &ErwParams,
    n: usize,
    count: usize,
    seed: u64,
    cfg: &SimConfig,
) -> Result<Vec<f64>> {
    let scale = (n as f64).powf(-params.a());
    Ok(simulate_positions(params, n, count, seed, cfg)?
        .into_iter()
        .map(|s| s as f64 * scale)
        .collect())
}

/// Kolmogorov distance between the empirical law of `positions` and the exact row.
pub fn ks_distance(row: &DistributionRow, positions: &[i64]) -> f64 {
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    let total = sorted.len() as f64;
    let mut exact = 0.0;
    let mut worst = 0.0_f64;
    let mut idx = 0;
    for (_, s, pr) in row.iter() {
        // samples strictly below s were counted at earlier lattice points
        while idx < sorted.len() && sorted[idx] < s {
            idx += 1;
        }
        worst = worst.max((idx as f64 / total - exact).abs());
        exact += pr;
        while idx < sorted.len() && sorted[idx] <= s {
            idx += 1;
        }
        worst = worst.max((idx as f64 / total - exact).abs());
    }
    worst.max((1.0 - exact).abs().min(1.0) * (idx < sorted.len()) as u8 as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::distribution_row;

    #[test]
    fn deterministic_when_p_is_one() {
        let params = ErwParams::new(1.0, 1.0).unwrap();
        let v = simulate_terminal(&params, 50, 20, 3).unwrap();
        for x in v {
            assert!((x - 50f64.powf(1.0 - params.a())).abs() < 1e-12);
        }
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let params = ErwParams::new(0.9, 0.7).unwrap();
        let one = SimConfig {
            threads: Some(1),
            ..SimConfig::default()
        };
        let two = SimConfig {
            threads: Some(2),
            ..SimConfig::default()
        };
        let a = simulate_positions(&params, 100, 500, 11, &one).unwrap();
        let b = simulate_positions(&params, 100, 500, 11, &two).unwrap();
        assert_eq!(a, b);
        let c = simulate_positions(&params, 100, 500, 12, &one).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn parity_and_range() {
        let params = ErwParams::new(0.8, 1.0).unwrap();
        for s in simulate_positions(&params, 31, 200, 5, &SimConfig::default()).unwrap() {
            assert!(s.abs() <= 31 && (s - 31) % 2 == 0);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let params = ErwParams::new(0.8, 1.0).unwrap();
        let cfg = SimConfig {
            step_budget: 1000,
            threads: None,
        };
        assert!(matches!(
            simulate_positions(&params, 100, 11, 0, &cfg),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn ks_against_exact_row() {
        let params = ErwParams::new(0.85, 1.0).unwrap();
        let row = distribution_row(&params, 20).unwrap();
        let pos = simulate_positions(&params, 20, 20_000, 1, &SimConfig::default()).unwrap();
        assert!(ks_distance(&row, &pos) < 0.02);
        let far: Vec<i64> = vec![-20; 10];
        assert!(ks_distance(&row, &far) > 0.99);
    }
}
