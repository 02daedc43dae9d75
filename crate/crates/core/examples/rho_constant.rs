//! The radius constant rho_a: Gamma product, integral form and endpoint laws.

use erwlab::moments::{ln_rho, rho, rho_integral};

fn main() -> erwlab::Result<()> {
    for a in [0.55, 2.0 / 3.0, 0.75, 0.9] {
        let q = rho_integral(a)?;
        println!("a = {a:.4}: rho {:.15}, integral {:.15} (+- {:.1e})", rho(a)?, q.value, q.abs_error_estimate);
    }
    for k in 2..=6 {
        let eps = 10f64.powi(-k);
        let lower = rho(0.5 + eps)? * 2.0 * eps.sqrt();
        let upper = ln_rho(1.0 - eps)?.exp_m1() / (eps * std::f64::consts::LN_2);
        println!("eps = 1e-{k}: 2 rho sqrt(a-1/2) = {lower:.8}, (rho-1)/((1-a) ln 2) = {upper:.8}");
    }
    Ok(())
}
