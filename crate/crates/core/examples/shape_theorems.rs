//! Unimodality and log-concavity of the exact rows, with the thresholds a_0..a_3.

use erwlab::walk::{check_shape, distribution_row, log_concavity_root, DistributionEvolver, ErwParams};

fn main() -> erwlab::Result<()> {
    for i in 0..4 {
        println!("a_{i} = {:.8}", log_concavity_root(i)?);
    }
    let a0 = log_concavity_root(0)?;
    for a in [a0 - 0.01, a0 + 0.01] {
        let r = check_shape(&distribution_row(&ErwParams::from_a(a, 1.0)?, 3)?);
        println!("a = {a:.5}: row n = 3 log-concave {}, first violation {:?}", r.log_concave, r.first_violation);
    }

    let mut ev = DistributionEvolver::new(&ErwParams::new(0.9, 1.0)?);
    let mut modes = Vec::new();
    while ev.n() < 400 {
        ev.advance()?;
        let r = check_shape(&ev.row(1.0));
        assert!(r.unimodal);
        if ev.n() % 100 == 0 {
            modes.push((ev.n(), r.mode_lo, r.mode_hi));
        }
    }
    println!("p = 0.9: rows 1..400 unimodal; modes (n, k_lo, k_hi) {modes:?}");
    Ok(())
}
