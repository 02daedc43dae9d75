//! Command-line driver: one subcommand per capability, CSV or JSON on
//! stdout or into a file.
//!
//! Exit status is 0 on success, 1 on a numerical failure or a failed check
//! and 2 on a usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::acceptance::{invariants_at, run_all, CriterionResult, SuiteConfig};
use crate::error::{domain, Error, Result};
use crate::limitlaw::{psi_mgf, MgfValue};
use crate::moments::{context, ln_rho, moment_sequence, rho, rho_integral};
use crate::output::{
    format_float, density_table, histogram_table, limit_table, linear_grid, moments_table, rows_table, samples_table,
    tails_table, Cell, Format, Table,
};
use crate::specfun::{
    f_derivative, f_eval, f_inverse, gamma_ln, hyp2f1, mittag_leffler, mittag_leffler2, prabhakar, Method, SeriesEval,
};
use crate::walk::{
    check_shape, distribution_row, evolve_distribution, log_concavity_root, scaled_density, simulate_terminal_with,
    DensityKind, ErwParams, SimConfig,
};

#[derive(Debug, Parser)]
#[command(name = "erwlab", version, about = "Exact laws, moments and limit-law numerics of the elephant random walk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file; standard output when omitted.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Worker threads for Monte Carlo work [default: all cores].
    #[arg(long, global = true, env = "ERWLAB_THREADS", value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

/// Memory parameter, either as the index `a` or as the step probability `p = (1+a)/2`.
#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct IndexArg {
    /// Memory index a = 2p - 1, dimensionless, in (1/2, 1) for the limit law.
    #[arg(long)]
    pub a: Option<f64>,
    /// Probability p of repeating the recalled step, in [0, 1].
    #[arg(long)]
    pub p: Option<f64>,
}

impl IndexArg {
    fn a(&self) -> f64 {
        match (self.a, self.p) {
            (Some(a), _) => a,
            (None, Some(p)) => 2.0 * p - 1.0,
            (None, None) => unreachable!("clap enforces one of --a, --p"),
        }
    }

    fn params(&self, q: f64) -> Result<ErwParams> {
        match (self.a, self.p) {
            (Some(a), _) => ErwParams::from_a(a, q),
            (None, Some(p)) => ErwParams::new(p, q),
            (None, None) => unreachable!("clap enforces one of --a, --p"),
        }
    }
}

/// Uniform grid on `[lo, hi]`.
#[derive(Debug, Clone, Copy, Args)]
pub struct GridArg {
    /// Left end of the grid [default depends on the command].
    #[arg(long)]
    pub lo: Option<f64>,
    /// Right end of the grid [default depends on the command].
    #[arg(long)]
    pub hi: Option<f64>,
    /// Number of grid points, at least 2.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
}

impl GridArg {
    fn build(&self, lo: f64, hi: f64) -> Result<Vec<f64>> {
        linear_grid(self.lo.unwrap_or(lo), self.hi.unwrap_or(hi), self.points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityArg {
    /// Lattice probabilities P(n, k).
    None,
    /// Step density of n^{-a} S_n.
    Step,
    /// Piecewise-affine density of n^{-a} S_n.
    Affine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecialFunction {
    /// Mittag-Leffler E_alpha(z).
    Ml,
    /// Two-parameter Mittag-Leffler E_{alpha,beta}(z).
    Ml2,
    /// Prabhakar E^gamma_{alpha,beta}(z).
    Prabhakar,
    /// The function F_a(z), z > 0.
    F,
    /// Inverse of F_a at y > 0.
    FInverse,
    /// Gauss 2F1(alpha, beta; gamma; z), z < 1.
    Hyp2f1,
    /// ln Gamma(z).
    GammaLn,
    /// Moment generating function Psi(r) of L_1 with omega, xi, eta.
    Psi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact law of S_n: lattice rows (n, k, s = 2k - n, prob) or the scaled density.
    Dist {
        #[command(flatten)]
        index: IndexArg,
        /// Probability that the first step is +1.
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        /// Single row at step n (default 100 unless --n-max is given).
        #[arg(long, conflicts_with = "n_max")]
        n: Option<usize>,
        /// All rows n = 1..=n_max.
        #[arg(long)]
        n_max: Option<usize>,
        /// Emit the density of n^{-a} S_n instead of lattice probabilities (single row only).
        #[arg(long, value_enum, default_value_t = DensityArg::None)]
        density: DensityArg,
    },
    /// Unimodality and log-concavity of rows n = 1..=n_max, with the log-concavity roots.
    Shape {
        #[command(flatten)]
        index: IndexArg,
        /// Probability that the first step is +1.
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        /// Largest row index.
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
    /// Monte Carlo samples of n^{-a} S_n as a histogram (or raw with --raw).
    Simulate {
        #[command(flatten)]
        index: IndexArg,
        /// Probability that the first step is +1.
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        /// Steps per trajectory.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Number of trajectories.
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        /// Generator seed; trajectory i uses stream i.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Histogram range start [default: smallest sample].
        #[arg(long)]
        lo: Option<f64>,
        /// Histogram range end [default: largest sample].
        #[arg(long)]
        hi: Option<f64>,
        /// Histogram cells.
        #[arg(long, default_value_t = 100)]
        bins: usize,
        /// Emit the samples themselves, one per row.
        #[arg(long)]
        raw: bool,
    },
    /// Moments m_n of the limit law: (n, m_scaled, m_log10, limit_moment_log10, asympt_ratio);
    /// JSON output adds the constants of the limit law.
    Moments {
        #[command(flatten)]
        index: IndexArg,
        /// Largest moment index, at least 2.
        #[arg(long, default_value_t = 100)]
        n_max: usize,
    },
    /// The radius constant rho_a from its Gamma product and from its integral,
    /// at one index or over a grid of a [default grid 0.51..0.99].
    Rho {
        /// Memory index a in (1/2, 1]; omit for a grid.
        #[arg(long)]
        a: Option<f64>,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Generating functions (x, G, A, B, M, r_imp, r_M) on a grid of x in (0, 1/rho_a)
    /// [default grid up to 0.94/rho_a].
    Limit {
        #[command(flatten)]
        index: IndexArg,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Natural logs of the tail asymptotes of the density of L_1 at +-x and of the
    /// exact density of n^{-a} S_n at +x [default grid 0.5..3].
    Tails {
        #[command(flatten)]
        index: IndexArg,
        /// Step index of the exact-density column.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Evaluates one special function and prints the value with its error estimate as JSON.
    Specfun {
        /// Function to evaluate.
        #[arg(long, value_enum)]
        function: SpecialFunction,
        /// Argument z (r for psi, y for f-inverse).
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// First parameter; also a for f, f-inverse and psi.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Second parameter.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Third parameter.
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Decimal digits of a multiple-precision evaluation for ml, prabhakar and psi; 0 selects double precision.
        #[arg(long, default_value_t = 0)]
        precision_digits: u32,
    },
    /// Runs the acceptance suite and prints one line per criterion; with --a also
    /// the invariants at that index. Exits 1 if anything fails.
    Check {
        /// Memory index a in (1/2, 1) for additional invariants.
        #[arg(long)]
        a: Option<f64>,
        /// Seed of the Monte Carlo criterion.
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
    },
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("erwlab: {e}");
            exit_code(&e)
        }
    }
}

/// Invalid arguments are usage errors; everything else is numerical.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain { .. } => 2,
        _ => 1,
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| domain("output", format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn io_error(e: io::Error) -> Error {
    Error::Domain {
        routine: "output",
        detail: e.to_string(),
    }
}

fn emit(cli: &Cli, table: Table) -> Result<i32> {
    let mut w = open_output(&cli.output)?;
    let table = table.with_meta("config", format!("{:?}", cli.command));
    table.write(cli.format.into(), &mut w).map_err(io_error)?;
    w.flush().map_err(io_error)?;
    Ok(0)
}

fn emit_json(cli: &Cli, value: serde_json::Value) -> Result<i32> {
    let mut w = open_output(&cli.output)?;
    serde_json::to_writer_pretty(&mut w, &value).map_err(|e| io_error(e.into()))?;
    writeln!(w).map_err(io_error)?;
    w.flush().map_err(io_error)?;
    Ok(0)
}

pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Dist {
            index,
            q,
            n,
            n_max,
            density,
        } => {
            let params = index.params(*q)?;
            let table = match (n_max, density) {
                (Some(n_max), DensityArg::None) => rows_table(&evolve_distribution(&params, *n_max)?),
                (Some(_), _) => return Err(domain("dist", "--density needs a single row (--n)")),
                (None, d) => {
                    let row = distribution_row(&params, n.unwrap_or(100))?;
                    match d {
                        DensityArg::None => rows_table(&[row]),
                        DensityArg::Step => density_table(&scaled_density(&row, params.a(), DensityKind::Step)?),
                        DensityArg::Affine => {
                            density_table(&scaled_density(&row, params.a(), DensityKind::PiecewiseAffine)?)
                        }
                    }
                }
            };
            emit(cli, table.with_meta("a", format_float(params.a())).with_meta("q", format_float(*q)))
        }
        Command::Shape { index, q, n_max } => {
            let params = index.params(*q)?;
            let mut t = Table::new(["n", "unimodal", "mode_lo", "mode_hi", "log_concave", "first_violation"])
                .with_meta("a", format_float(params.a()))
                .with_meta("q", format_float(*q));
            for i in 0..4 {
                t = t.with_meta(format!("log_concavity_root_{i}"), format_float(log_concavity_root(i)?));
            }
            for row in evolve_distribution(&params, *n_max)? {
                let s = check_shape(&row);
                t.push(vec![
                    row.n.into(),
                    Cell::Int(s.unimodal as i64),
                    s.mode_lo.into(),
                    s.mode_hi.into(),
                    Cell::Int(s.log_concave as i64),
                    s.first_violation.map_or(Cell::Int(-1), Cell::from),
                ]);
            }
            emit(cli, t)
        }
        Command::Simulate {
            index,
            q,
            n,
            count,
            seed,
            lo,
            hi,
            bins,
            raw,
        } => {
            let params = index.params(*q)?;
            let cfg = SimConfig {
                threads: cli.threads,
                ..SimConfig::default()
            };
            let samples = simulate_terminal_with(&params, *n, *count, *seed, &cfg)?;
            let table = if *raw {
                samples_table(&samples)
            } else {
                let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
                let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lo = lo.unwrap_or(min);
                let hi = hi.unwrap_or(if max > lo { max } else { lo + 1.0 });
                histogram_table(&samples, lo, hi, *bins)?
            };
            emit(
                cli,
                table
                    .with_meta("seed", seed)
                    .with_meta("a", format_float(params.a()))
                    .with_meta("q", format_float(*q))
                    .with_meta("n", n)
                    .with_meta("count", count),
            )
        }
        Command::Moments { index, n_max } => {
            let a = index.a();
            let table = moment_sequence(a, *n_max)?;
            let ctx = context(a).ok();
            let t = moments_table(&table, ctx.as_ref());
            match cli.format {
                FormatArg::Csv => emit(cli, t),
                FormatArg::Json => {
                    let mut v = t.with_meta("config", format!("{:?}", cli.command)).to_json();
                    v["context"] = json!(ctx);
                    emit_json(cli, v)
                }
            }
        }
        Command::Rho { a, grid } => {
            let grid = match a {
                Some(a) => vec![*a],
                None => grid.build(0.51, 0.99)?,
            };
            let mut t = Table::new(["a", "rho", "ln_rho", "rho_integral", "rho_integral_error"]);
            for a in grid {
                let r = rho_integral(a)?;
                t.push(vec![a.into(), rho(a)?.into(), ln_rho(a)?.into(), r.value.into(), r.abs_error_estimate.into()]);
            }
            emit(cli, t)
        }
        Command::Limit { index, grid } => {
            let a = index.a();
            let r = rho(a)?;
            let hi = 0.94 / r;
            let t = limit_table(a, &grid.build(hi / grid.points as f64, hi)?)?;
            emit(cli, t)
        }
        Command::Tails { index, n, grid } => {
            let params = index.params(1.0)?;
            let ctx = context(params.a())?;
            let row = distribution_row(&params, *n)?;
            let d = scaled_density(&row, params.a(), DensityKind::Step)?;
            emit(cli, tails_table(&ctx, &grid.build(0.5, 3.0)?, &d, *n))
        }
        Command::Specfun {
            function,
            z,
            alpha,
            beta,
            gamma,
            precision_digits,
        } => {
            let args = json!({ "function": format!("{function:?}").to_lowercase(), "z": z, "alpha": alpha,
                               "beta": beta, "gamma": gamma, "precision_digits": precision_digits });
            let value = match function {
                SpecialFunction::Psi => json!(mgf(*alpha, *z, *precision_digits)?),
                f => json!(special(*f, *alpha, *beta, *gamma, *z, *precision_digits)?),
            };
            emit_json(cli, json!({ "input": args, "result": value }))
        }
        Command::Check { a, seed } => {
            let cfg = SuiteConfig {
                seed: *seed,
                threads: cli.threads,
            };
            let mut results = run_all(&cfg);
            if let Some(a) = a {
                results.extend(invariants_at(*a));
            }
            print_check(cli, &results)?;
            Ok(if results.iter().all(|r| r.passed) { 0 } else { 1 })
        }
    }
}

fn print_check(cli: &Cli, results: &[CriterionResult]) -> Result<()> {
    let mut w = open_output(&cli.output)?;
    match cli.format {
        FormatArg::Json => {
            serde_json::to_writer_pretty(&mut w, results).map_err(|e| io_error(e.into()))?;
            writeln!(w).map_err(io_error)?;
        }
        FormatArg::Csv => {
            for r in results {
                writeln!(w, "{}", r.line()).map_err(io_error)?;
            }
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            if failed.is_empty() {
                writeln!(w, "all {} checks passed", results.len()).map_err(io_error)?;
            } else {
                writeln!(w, "{} of {} checks failed: {}", failed.len(), results.len(), failed.join(", "))
                    .map_err(io_error)?;
            }
        }
    }
    w.flush().map_err(io_error)
}

fn special(f: SpecialFunction, alpha: f64, beta: f64, gamma: f64, z: f64, digits: u32) -> Result<SeriesEval> {
    if digits > 0 {
        return special_precise(f, alpha, beta, gamma, z, digits);
    }
    match f {
        SpecialFunction::Ml => mittag_leffler(alpha, z),
        SpecialFunction::Ml2 => mittag_leffler2(alpha, beta, z),
        SpecialFunction::Prabhakar => prabhakar(alpha, beta, gamma, z),
        SpecialFunction::F => f_eval(alpha, z),
        SpecialFunction::FInverse => {
            let v = f_inverse(alpha, z)?;
            // Residual bound of the inversion carried through F'.
            let err = 1e-11 * z.max(1.0) / f_derivative(alpha, v)?.abs();
            Ok(SeriesEval::new(v, err, 0, Method::Hybrid))
        }
        SpecialFunction::Hyp2f1 => hyp2f1(alpha, beta, gamma, z),
        SpecialFunction::GammaLn => {
            let v = gamma_ln(z)?;
            Ok(SeriesEval::new(v, 4.0 * f64::EPSILON * v.abs().max(1.0), 0, Method::Series))
        }
        SpecialFunction::Psi => unreachable!("handled by mgf"),
    }
}

#[cfg(feature = "high-precision")]
fn special_precise(f: SpecialFunction, alpha: f64, beta: f64, gamma: f64, z: f64, digits: u32) -> Result<SeriesEval> {
    use crate::precise::{mittag_leffler_precise, prabhakar_precise};
    match f {
        SpecialFunction::Ml => mittag_leffler_precise(alpha, z, digits),
        SpecialFunction::Ml2 => prabhakar_precise(alpha, beta, 1.0, z, digits),
        SpecialFunction::Prabhakar => prabhakar_precise(alpha, beta, gamma, z, digits),
        _ => Err(domain("specfun", "--precision-digits applies to ml, ml2, prabhakar and psi only")),
    }
}

#[cfg(not(feature = "high-precision"))]
fn special_precise(_: SpecialFunction, _: f64, _: f64, _: f64, _: f64, _: u32) -> Result<SeriesEval> {
    Err(Error::HighPrecisionUnavailable)
}

fn mgf(a: f64, r: f64, digits: u32) -> Result<MgfValue> {
    if digits == 0 {
        return psi_mgf(a, r);
    }
    #[cfg(feature = "high-precision")]
    {
        crate::precise::psi_mgf_precise(a, r, digits)
    }
    #[cfg(not(feature = "high-precision"))]
    {
        Err(Error::HighPrecisionUnavailable)
    }
}
