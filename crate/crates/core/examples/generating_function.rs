//! Closed form of the moment generating series M, its parts and residuals.

use erwlab::limitlaw::{genfun, genfun_series, residuals};
use erwlab::moments::{moment_sequence, rho};

fn main() -> erwlab::Result<()> {
    let a = 0.75;
    let r = rho(a)?;
    let table = moment_sequence(a, 200)?;
    println!("a = {a}, pole at x = 1/rho = {:.10}", 1.0 / r);
    for t in [0.1, 0.3, 0.6, 0.9] {
        let x = t / r;
        let v = genfun(a, x)?;
        let res = residuals(a, x)?;
        println!(
            "rho x = {t}: G {:.8} A {:.8} B {:.8} M {:.10} series {:.10} r_imp {:.1e} ode {:.1e}",
            v.g,
            v.a_even,
            v.b,
            v.m,
            genfun_series(&table, x, 200),
            res.r_imp,
            res.max_ode()
        );
    }
    for k in 2..=6 {
        let eps = 10f64.powi(-k);
        let m = genfun(a, (1.0 - eps) / r)?.m;
        println!("1 - rho x = 1e-{k}: (1 - rho x) M = {:.8} -> 2a/(a+1) = {:.8}", eps * m, 2.0 * a / (a + 1.0));
    }
    Ok(())
}
