//! Tail asymptotes of the density of L_1 against the exact finite-n density.

use erwlab::limitlaw::{tail_asymptote, tail_ratio_asymptote, Side};
use erwlab::moments::context;
use erwlab::walk::{distribution_row, scaled_density, DensityKind, ErwParams};

fn main() -> erwlab::Result<()> {
    let a = 0.75;
    let ctx = context(a)?;
    let pos = tail_asymptote(&ctx, Side::Positive, None);
    let neg = tail_asymptote(&ctx, Side::Negative, None);
    println!("right tail {:.6} x^{:.4} exp(-{:.6} x^{:.1})", pos.prefactor, pos.power, pos.stretch, pos.stretch_power);
    println!("left tail  {:.6} x^{:.4} exp(-{:.6} x^{:.1})", neg.prefactor, neg.power, neg.stretch, neg.stretch_power);
    let ratio = tail_ratio_asymptote(&ctx);
    println!("ratio {:.6} x^{:.4}", ratio.prefactor, ratio.power);

    let n = 3000;
    let row = distribution_row(&ErwParams::from_a(a, 1.0)?, n)?;
    let d = scaled_density(&row, a, DensityKind::Step)?;
    for x in [1.0, 2.0, 3.0, 4.0] {
        let f = d.eval(x);
        println!("x = {x}: ln f_n = {:.4}, ln tail = {:.4}, ratio of logs {:.4}", f.ln(), pos.ln_eval(x), f.ln() / pos.ln_eval(x));
    }
    Ok(())
}
