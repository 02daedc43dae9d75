//! Moments of the limit law: recurrence, large-n asymptotics and the Hankel test.

use erwlab::moments::{
    asymptotic_moment_ln, context, hankel_test, limit_moment, moment_sequence, AsymptoticOrder,
};

fn main() -> erwlab::Result<()> {
    let a = 2.0 / 3.0;
    let ctx = context(a)?;
    println!("a = 2/3: rho {:.15}, kappa {:.6}, delta {:.6}", ctx.rho, ctx.kappa, ctx.delta);
    println!("E[L] = {:.12}, E[L^2] = {:.12}", limit_moment(a, 1)?, limit_moment(a, 2)?);

    let table = moment_sequence(a, 1000)?;
    for n in [10, 100, 500, 1000] {
        let lm = table.limit_moment_ln(n);
        let lead = (lm - asymptotic_moment_ln(&ctx, n, AsymptoticOrder::Leading)).exp();
        let corr = (lm - asymptotic_moment_ln(&ctx, n, AsymptoticOrder::FirstCorrection)).exp();
        println!("n = {n:>4}: ratio to leading {lead:.8}, to corrected {corr:.8}");
    }

    let signs: String = hankel_test(&table, 15)?
        .iter()
        .map(|h| match h.sign {
            erwlab::moments::DetSign::Positive => '+',
            erwlab::moments::DetSign::Negative => '-',
            erwlab::moments::DetSign::Indeterminate => '?',
        })
        .collect();
    println!("Hankel determinant signs k = 0..15: {signs}");
    println!("a negative sign means no real measure has these moments");
    Ok(())
}
