//! Mittag-Leffler and Prabhakar functions, the function F and its inverse, 2F1.

use erwlab::specfun::{
    f_eval, f_inverse, f_regimes, hyp2f1, mittag_leffler, prabhakar, prabhakar_asymptote_ln, prabhakar_ln_series,
};

fn main() -> erwlab::Result<()> {
    println!("E_1(1) = {:.15}", mittag_leffler(1.0, 1.0)?.value);
    println!("E_1/2(1) = {:.15}", mittag_leffler(0.5, 1.0)?.value);
    println!("E_1/2(-2) = {:.15}", mittag_leffler(0.5, -2.0)?.value);
    let p = prabhakar(0.75, 1.0, 0.2, 5.0)?;
    println!("E^0.2_0.75,1(5) = {:.12} (+- {:.1e}, {:?})", p.value, p.abs_error_estimate, p.method);

    // Beyond the double range the log-domain series still works.
    let (al, g, z) = (0.75, 1.0 / 7.0, 1e3);
    let ln = prabhakar_ln_series(al, 1.0, g, z, 100_000)?;
    println!("ln E^(1/7)_0.75,1(1000) = {:.6}, ratio to asymptote {:.8}", ln.ln_value,
        (ln.ln_value - prabhakar_asymptote_ln(al, 1.0, g, z)).exp());

    let a = 0.75;
    for zz in [0.5, 2.0] {
        let r = f_regimes(a, zz)?;
        println!("F({zz}) = {:.14}, regimes agree to {:.1e}", r.quadrature.value, r.max_rel_disagreement);
    }
    let y = f_eval(a, 1.3)?.value;
    println!("F^-1(F(1.3)) = {:.14}", f_inverse(a, y)?);
    println!("2F1(1,1;2;-3) = {:.15} vs ln(4)/3 = {:.15}", hyp2f1(1.0, 1.0, 2.0, -3.0)?.value, 4f64.ln() / 3.0);
    Ok(())
}
