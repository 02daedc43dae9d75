//! Multiple-precision evaluation of alternating series at large negative arguments.

use erwlab::limitlaw::{eta_asymptote, Side};
use erwlab::precise::{mittag_leffler_precise, psi_mgf_precise, DEFAULT_DIGITS};
use erwlab::specfun::mittag_leffler;
use erwlab::Error;

fn main() -> erwlab::Result<()> {
    match mittag_leffler(0.5, -10.0) {
        Err(Error::PrecisionLoss { needed_digits, .. }) => println!("double precision refuses E_1/2(-10); needs >= {needed_digits} digits"),
        other => println!("unexpected: {other:?}"),
    }
    let v = mittag_leffler_precise(0.5, -10.0, 80)?;
    println!("E_1/2(-10) = {:.15} vs e^100 erfc(10) = {:.15}", v.value, 100f64.exp() * libm::erfc(10.0));

    let a = 0.7;
    for r in [5.0, 20.0, 50.0] {
        let v = match psi_mgf_precise(a, -r, DEFAULT_DIGITS) {
            Err(Error::PrecisionLoss { needed_digits, .. }) => psi_mgf_precise(a, -r, needed_digits)?,
            other => other?,
        };
        println!("r = -{r}: ln Psi {:.6}, xi {:.6}, eta/asymptote {:.6}", v.ln_psi, v.xi, v.eta / eta_asymptote(a, r, Side::Negative));
    }
    Ok(())
}
