//! Monte Carlo cross-checks of the limit moments.

use erwlab::moments::limit_moment;
use erwlab::walk::{simulate_terminal, ErwParams};

/// Exact `E[S_n²]` from `E[S_{k+1}²] = (1 + 2a/k) E[S_k²] + 1`, `E[S_1²] = 1`.
fn exact_second_moment(a: f64, n: usize) -> f64 {
    (1..n).fold(1.0, |m, k| m * (1.0 + 2.0 * a / k as f64) + 1.0)
}

#[test]
fn first_two_moments_match_simulation() {
    // At a = 0.9 the finite-n bias of the second moment, of order n^{1-2a},
    // is a fraction of the standard error at n = 10⁴.
    let (a, n, count) = (0.9, 10_000, 100_000);
    let samples = simulate_terminal(&ErwParams::from_a(a, 1.0).unwrap(), n, count, 91).unwrap();
    let c = count as f64;
    let mean = samples.iter().sum::<f64>() / c;
    let second = samples.iter().map(|x| x * x).sum::<f64>() / c;
    let var1 = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (c - 1.0);
    let var2 = samples.iter().map(|x| (x * x - second).powi(2)).sum::<f64>() / (c - 1.0);
    let (m1, m2) = (limit_moment(a, 1).unwrap(), limit_moment(a, 2).unwrap());
    let z1 = (mean - m1) / (var1 / c).sqrt();
    let z2 = (second - m2) / (var2 / c).sqrt();
    assert!(z1.abs() < 3.0, "E[L] = {m1}, sample mean {mean}, z = {z1}");
    assert!(z2.abs() < 3.0, "E[L²] = {m2}, sample second moment {second}, z = {z2}");
}

#[test]
fn exact_second_moment_converges_to_limit() {
    for a in [0.6, 0.75, 0.9] {
        let m2 = limit_moment(a, 2).unwrap();
        let gap = |n: usize| (exact_second_moment(a, n) / (n as f64).powf(2.0 * a) - m2).abs();
        let (g3, g4, g5) = (gap(1_000), gap(10_000), gap(100_000));
        assert!(g4 < g3 && g5 < g4, "a = {a}: {g3} {g4} {g5}");
        // The gap decays like n^{1-2a}.
        let slope = (g5 / g4).log10();
        assert!((slope - (1.0 - 2.0 * a)).abs() < 0.05, "a = {a}: slope {slope}");
    }
}
