//! Writes the moment table and the generating functions as CSV.

use erwlab::moments::{context, moment_sequence};
use erwlab::output::{limit_table, linear_grid, moments_table};

fn main() -> erwlab::Result<()> {
    let a = 2.0 / 3.0;
    let ctx = context(a)?;
    let mut out = std::io::stdout().lock();
    moments_table(&moment_sequence(a, 20)?, Some(&ctx)).write_csv(&mut out).expect("stdout");
    let grid = linear_grid(0.05, 0.6, 5)?;
    limit_table(a, &grid)?.write_csv(&mut out).expect("stdout");
    Ok(())
}
