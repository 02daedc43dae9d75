//! Property tests of the structural invariants of every module.

use proptest::prelude::*;

use erwlab::limitlaw::{genfun, psi_mgf, tail_asymptote, Side};
use erwlab::moments::{context, moment_sequence, moment_sequence_unscaled, pochhammer_ratio_asymptote, rho};
use erwlab::specfun::{f_eval, mittag_leffler, prabhakar, prabhakar_with, EvalMode, SeriesConfig};
use erwlab::walk::{check_shape, distribution_row, log_concavity_root, DistributionEvolver, ErwParams};
use erwlab::Error;

/// `E[S_n]` from `E[S_{n+1}] = (1 + a/n) E[S_n]`, `E[S_1] = 2q - 1`.
fn mean_by_product(a: f64, q: f64, n: usize) -> f64 {
    (1..n).fold(2.0 * q - 1.0, |m, k| m * (1.0 + a / k as f64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rows_conserve_mass(p in 0.55f64..0.95, n in 1usize..600) {
        let row = distribution_row(&ErwParams::new(p, 1.0).unwrap(), n).unwrap();
        let mass: f64 = row.probs.iter().sum();
        prop_assert!((mass - 1.0).abs() < 1e-12, "mass {}", mass);
        prop_assert!(row.probs.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn mean_matches_product_formula(p in 0.0f64..1.0, q in 0.0f64..1.0, n in 1usize..400) {
        let params = ErwParams::new(p, q).unwrap();
        let row = distribution_row(&params, n).unwrap();
        let expected = mean_by_product(2.0 * p - 1.0, q, n);
        prop_assert!((row.mean() - expected).abs() < 1e-10 * expected.abs().max(1.0),
            "{} vs {}", row.mean(), expected);
    }

    #[test]
    fn rows_are_unimodal(p in 0.5f64..1.0, n in 1usize..300) {
        let row = distribution_row(&ErwParams::new(p, 1.0).unwrap(), n).unwrap();
        prop_assert!(check_shape(&row).unimodal);
    }

    #[test]
    fn log_concavity_iff_below_root(a in 0.5f64..0.75) {
        let a0 = log_concavity_root(0).unwrap();
        prop_assume!((a - a0).abs() > 1e-3);
        let mut ev = DistributionEvolver::new(&ErwParams::from_a(a, 1.0).unwrap());
        let mut all = true;
        for n in 2..=50 {
            ev.advance().unwrap();
            if n >= 3 && !check_shape(&ev.row(1.0)).log_concave {
                all = false;
            }
        }
        prop_assert_eq!(all, a <= a0);
    }

    #[test]
    fn f_strictly_decreasing(a in 0.55f64..0.95, l1 in -4.0f64..4.0, gap in 0.01f64..2.0) {
        let (z1, z2) = (l1.exp(), (l1 + gap).exp());
        prop_assert!(f_eval(a, z1).unwrap().value > f_eval(a, z2).unwrap().value);
    }

    #[test]
    fn mittag_leffler_is_prabhakar_with_unit_gamma(alpha in 0.3f64..1.0, z in -20.0f64..20.0) {
        let ml = mittag_leffler(alpha, z);
        let pr = prabhakar(alpha, 1.0, 1.0, z);
        match (ml, pr) {
            (Ok(m), Ok(p)) => prop_assert!((m.value - p.value).abs() <= 1e-12 * m.value.abs().max(1.0),
                "{} vs {}", m.value, p.value),
            (Err(Error::PrecisionLoss { .. }), Err(Error::PrecisionLoss { .. })) => {}
            (Err(Error::Overflow { .. }), Err(Error::Overflow { .. })) => {}
            (m, p) => prop_assert!(false, "mismatched outcomes {:?} / {:?}", m, p),
        }
    }

    #[test]
    fn error_estimates_survive_doubled_budget(alpha in 0.3f64..1.0, gamma in 0.1f64..3.0, z in -10.0f64..20.0) {
        let base = SeriesConfig::default();
        let wide = SeriesConfig { max_terms: 2 * base.max_terms, rel_tol: base.rel_tol / 2.0, ..base };
        let v = prabhakar_with(alpha, 1.0, gamma, z, EvalMode::Series, &base);
        prop_assume!(v.is_ok());
        let v = v.unwrap();
        let w = prabhakar_with(alpha, 1.0, gamma, z, EvalMode::Series, &wide).unwrap();
        prop_assert!((v.value - w.value).abs() <= v.abs_error_estimate.max(f64::EPSILON * v.value.abs()),
            "change {:e} > estimate {:e}", (v.value - w.value).abs(), v.abs_error_estimate);
    }

    #[test]
    fn error_estimates_bracket_high_precision(alpha in 0.3f64..1.0, gamma in 0.1f64..3.0, z in -12.0f64..15.0) {
        let v = prabhakar(alpha, 1.0, gamma, z);
        prop_assume!(v.is_ok());
        let v = v.unwrap();
        let hp = erwlab::precise::prabhakar_precise(alpha, 1.0, gamma, z, 60).unwrap();
        let dev = (v.value - hp.value).abs();
        prop_assert!(dev <= v.abs_error_estimate + 2.0 * f64::EPSILON * hp.value.abs(),
            "deviation {:e} > estimate {:e}", dev, v.abs_error_estimate);
    }

    #[test]
    fn tilted_variance_nonnegative(a in 0.56f64..0.94, r in -20.0f64..40.0) {
        if let Ok(v) = psi_mgf(a, r) {
            prop_assert!(v.eta.is_finite() && v.eta >= 0.0);
            // ln Ψ is convex: its second difference is the tilted variance.
            let h = 1e-2;
            let (lo, hi) = (psi_mgf(a, r - h), psi_mgf(a, r + h));
            if let (Ok(lo), Ok(hi)) = (lo, hi) {
                let second = lo.ln_psi + hi.ln_psi - 2.0 * v.ln_psi;
                prop_assert!(second > -1e-9 * v.ln_psi.abs().max(1.0), "second difference {:e}", second);
            }
        }
    }

    #[test]
    fn right_tail_exponent_exceeds_left(a in 0.501f64..0.999) {
        let ctx = context(a).unwrap();
        let pos = tail_asymptote(&ctx, Side::Positive, None);
        let neg = tail_asymptote(&ctx, Side::Negative, None);
        prop_assert!(pos.power > neg.power);
        prop_assert_eq!(pos.stretch, neg.stretch);
    }

    #[test]
    fn moments_positive(a in 0.501f64..1.0) {
        let t = moment_sequence(a, 2000).unwrap();
        prop_assert!(t.scaled().iter().all(|&m| m > 0.0 && m.is_finite()));
    }

    #[test]
    fn scaled_and_unscaled_moments_agree(a in 0.51f64..1.0) {
        let t = moment_sequence(a, 50).unwrap();
        let u = moment_sequence_unscaled(a, 50).unwrap();
        let r = rho(a).unwrap();
        for n in 0..=50 {
            let from_scaled = t.scaled()[n] * r.powi(n as i32);
            prop_assert!((from_scaled / u[n] - 1.0).abs() < 1e-12, "n = {}", n);
        }
    }

    #[test]
    fn parity_split_reconstructs_even_part(a in 0.55f64..0.95, t in 0.01f64..0.99) {
        let x = t / rho(a).unwrap();
        let v = genfun(a, x).unwrap();
        let sum = v.m + v.m_reflected();
        prop_assert!((sum - 2.0 * v.a_even).abs() <= 4.0 * f64::EPSILON * v.a_even, "{} vs {}", sum, 2.0 * v.a_even);
    }
}

#[test]
fn log_concavity_roots_increase() {
    let roots: Vec<f64> = (0..4).map(|i| log_concavity_root(i).unwrap()).collect();
    assert!(roots.windows(2).all(|w| w[0] < w[1]), "{roots:?}");
}

#[test]
fn rho_decreasing_and_convex() {
    let grid: Vec<f64> = (0..=400).map(|i| 0.505 + 0.49 * i as f64 / 400.0).collect();
    let r: Vec<f64> = grid.iter().map(|&a| rho(a).unwrap()).collect();
    for w in r.windows(3) {
        assert!(w[1] < w[0] && w[2] < w[1]);
        assert!(w[0] + w[2] - 2.0 * w[1] > 0.0);
    }
}

#[test]
fn pochhammer_two_term_asymptote() {
    for a in [0.6, 0.75, 0.9] {
        let delta = context(a).unwrap().delta;
        for x in [delta, 2.0 * delta] {
            let n = 1000;
            let (exact, _) = pochhammer_ratio_asymptote(x, n);
            let lead = ((x - 1.0) * (n as f64).ln() - libm::lgamma(x)).exp();
            let dev = (exact / lead - 1.0).abs();
            assert!(dev < 2.0 * (x * (x - 1.0) / (2.0 * n as f64)).abs() + 1e-3, "a = {a}, x = {x}: {dev}");
        }
    }
}

#[test]
fn pole_residue() {
    // (1 - ρx) M(x) → 2a/(a+1) as ρx → 1, with error O((1-ρx)^{1-δ}).
    for a in [0.6, 0.75, 0.9] {
        let r = rho(a).unwrap();
        let delta = context(a).unwrap().delta;
        let target = 2.0 * a / (a + 1.0);
        let mut prev = f64::INFINITY;
        for k in 2..=6 {
            let eps = 10f64.powi(-k);
            let m = genfun(a, (1.0 - eps) / r).unwrap().m;
            let err = (eps * m - target).abs();
            assert!(err < prev, "a = {a}, k = {k}: {err} not below {prev}");
            assert!(err < 5.0 * eps.powf(1.0 - delta), "a = {a}, k = {k}: {err}");
            prev = err;
        }
        assert!(prev < 1e-4, "a = {a}: {prev}");
    }
}
