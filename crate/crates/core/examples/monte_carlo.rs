//! Seeded parallel simulation of n^-a S_n compared with the exact row.

use erwlab::walk::{distribution_row, ks_distance, simulate_positions, simulate_terminal, ErwParams, SimConfig};

fn main() -> erwlab::Result<()> {
    let params = ErwParams::new(0.92, 1.0)?;
    let (n, count, seed) = (200, 50_000, 7);
    let positions = simulate_positions(&params, n, count, seed, &SimConfig::default())?;
    let exact = distribution_row(&params, n)?;
    let ks = ks_distance(&exact, &positions);
    let bound = ((2.0f64 / 1e-3).ln() / (2.0 * count as f64)).sqrt();
    println!("n = {n}, {count} walks: KS distance {ks:.5} (alpha = 1e-3 bound {bound:.5})");

    let samples = simulate_terminal(&params, 2000, 20_000, seed)?;
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let limit = 1.0 / libm::tgamma(1.0 + params.a());
    println!("n = 2000: mean of n^-a S_n {mean:.4}, limit 1/Gamma(1+a) = {limit:.4}");
    Ok(())
}
