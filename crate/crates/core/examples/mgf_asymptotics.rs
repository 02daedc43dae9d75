//! Moment generating function Psi of L_1 with the tilted mean xi and scale eta.

use erwlab::limitlaw::{eta_asymptote, psi_mgf, Side};
use erwlab::moments::rho;

fn main() -> erwlab::Result<()> {
    let a = 0.75;
    let r0 = rho(a)?;
    for r in [1.0, 10.0, 50.0, 100.0] {
        let v = psi_mgf(a, r)?;
        let lead = 2.0 * (r0 * r).powf(1.0 / a).exp() / (a + 1.0);
        println!(
            "r = {r:>5}: Psi/leading {:.6}, xi a / r^(1/a-1) {:.6}, eta/asymptote {:.6}",
            v.psi / lead,
            v.xi * a / r.powf(1.0 / a - 1.0),
            v.eta / eta_asymptote(a, r, Side::Positive)
        );
    }
    let v = psi_mgf(a, -5.0)?;
    println!("r = -5: Psi {:.10}, xi {:.6}, eta {:.6}", v.psi, v.xi, v.eta);
    Ok(())
}
