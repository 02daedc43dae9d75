//! Exact law of S_n for the elephant walk and its rescaled step density.

use erwlab::walk::{distribution_row, mean_position, scaled_density, DensityKind, ErwParams};

fn main() -> erwlab::Result<()> {
    let params = ErwParams::new(0.8, 1.0)?;
    let row = distribution_row(&params, 10)?;
    println!("P(S_10 = s), p = 0.8, first step +1:");
    for (_, s, p) in row.iter() {
        println!("  s = {s:>3}  {p:.10}");
    }
    println!("mean {:.12} vs product formula {:.12}", row.mean(), mean_position(&params, 10));

    // q < 1 mixes the row with its reflection.
    let mixed = ErwParams::new(0.8, 0.3)?;
    println!("mean with q = 0.3: {:.12}", distribution_row(&mixed, 10)?.mean());

    let big = distribution_row(&params, 1000)?;
    let d = scaled_density(&big, params.a(), DensityKind::Step)?;
    println!("n = 1000: density of n^-a S_n integrates to {:.15}", d.integral());
    for x in [-1.0, 0.0, 0.5, 1.0, 2.0] {
        println!("  f({x:>4}) = {:.6}", d.eval(x));
    }
    Ok(())
}
