//! Tabular CSV and JSON emitters for distributions, moments and limit-law
//! quantities.
//!
//! CSV output starts with `#`-prefixed metadata lines followed by a header
//! row; floats carry 17 significant digits so every value round-trips.

use std::io::{self, Write};
use std::f64::consts::LN_10;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{domain, Result};
use crate::limitlaw::{genfun, residuals, tail_ln, Side};
use crate::moments::{asymptotic_moment_ln, AsymptoticOrder, LimitLawContext, MomentTable};
use crate::walk::{DensityKind, DistributionRow, StepDensity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // Non-finite values become null.
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

/// 17 significant digits in scientific notation; `inf`, `-inf`, `NaN` verbatim.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Named columns, rows of cells and key-value metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Vec<(String, String)>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            meta: vec![("version".into(), env!("CARGO_PKG_VERSION").into())],
        }
    }

    /// Adds a metadata entry.
    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.meta.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    /// `{"meta": {..}, "columns": [..], "rows": [{column: value}, ..]}`.
    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "meta": meta, "columns": self.columns, "rows": rows })
    }

    pub fn write_json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, &self.to_json())?;
        writeln!(w)
    }

    pub fn write<W: Write>(&self, format: Format, w: &mut W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }
}

/// `(n, k, s = 2k - n, prob)` for every lattice point of every row.
pub fn rows_table(rows: &[DistributionRow]) -> Table {
    let mut t = Table::new(["n", "k", "s", "prob"]);
    for row in rows {
        for (k, s, p) in row.iter() {
            t.push(vec![row.n.into(), k.into(), s.into(), p.into()]);
        }
    }
    t
}

/// `(x_left, x_right, value)` per cell; for the affine kind the value is the
/// pair of node values joined by the segment.
pub fn density_table(d: &StepDensity) -> Table {
    match d.kind {
        DensityKind::Step => {
            let mut t = Table::new(["x_left", "x_right", "value"]).with_meta("kind", "step");
            for (i, v) in d.values.iter().enumerate() {
                t.push(vec![d.breakpoints[i].into(), d.breakpoints[i + 1].into(), (*v).into()]);
            }
            t
        }
        DensityKind::PiecewiseAffine => {
            let mut t =
                Table::new(["x_left", "x_right", "value_left", "value_right"]).with_meta("kind", "piecewise-affine");
            for i in 0..d.values.len().saturating_sub(1) {
                t.push(vec![
                    d.breakpoints[i].into(),
                    d.breakpoints[i + 1].into(),
                    d.values[i].into(),
                    d.values[i + 1].into(),
                ]);
            }
            t
        }
    }
}

/// One sample per row.
pub fn samples_table(samples: &[f64]) -> Table {
    let mut t = Table::new(["x"]);
    for &x in samples {
        t.push(vec![x.into()]);
    }
    t
}

/// Histogram density of `samples` on `bins` equal cells of `[lo, hi]`;
/// samples outside the range are counted in the metadata only.
pub fn histogram_table(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Result<Table> {
    if !(lo < hi) || bins < 1 {
        return Err(domain("histogram", format!("need lo < hi and bins >= 1, got [{lo}, {hi}], {bins}")));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    let mut outside = 0u64;
    for &x in samples {
        if x < lo || x > hi {
            outside += 1;
            continue;
        }
        let i = (((x - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let total = samples.len() as f64;
    let mut t = Table::new(["x_left", "x_right", "count", "density"])
        .with_meta("samples", samples.len())
        .with_meta("outside_range", outside);
    for (i, &c) in counts.iter().enumerate() {
        let left = lo + i as f64 * width;
        t.push(vec![
            left.into(),
            (left + width).into(),
            Cell::Int(c as i64),
            (c as f64 / (total * width)).into(),
        ]);
    }
    Ok(t)
}

/// `(n, m_scaled, m_log10, limit_moment_log10, asympt_ratio)` where the ratio
/// is `E[L₁ⁿ]` over its leading large-`n` approximation.
pub fn moments_table(table: &MomentTable, ctx: Option<&LimitLawContext>) -> Table {
    let mut t = Table::new(["n", "m_scaled", "m_log10", "limit_moment_log10", "asympt_ratio"])
        .with_meta("a", format_float(table.a()))
        .with_meta("rho", format_float(table.rho()));
    for n in 0..=table.n_max() {
        let lm = table.limit_moment_ln(n);
        let ratio = match ctx {
            Some(c) if n >= 1 => (lm - asymptotic_moment_ln(c, n, AsymptoticOrder::Leading)).exp(),
            _ => f64::NAN,
        };
        t.push(vec![
            n.into(),
            table.scaled()[n].into(),
            (table.ln_moment(n) / LN_10).into(),
            (lm / LN_10).into(),
            ratio.into(),
        ]);
    }
    t
}

/// `(x, G, A, B, M, r_imp, r_M)` at each grid point inside `(0, 1/ρ_a)`;
/// residuals are blank where their stencil would cross the pole.
pub fn limit_table(a: f64, grid: &[f64]) -> Result<Table> {
    let mut t = Table::new(["x", "G", "A", "B", "M", "r_imp", "r_M"]).with_meta("a", format_float(a));
    for &x in grid {
        let v = genfun(a, x)?;
        let (r_imp, r_m) = match residuals(a, x) {
            Ok(r) => (r.r_imp, r.r_m),
            Err(_) => (f64::NAN, f64::NAN),
        };
        t.push(vec![
            x.into(),
            v.g.into(),
            v.a_even.into(),
            v.b.into(),
            v.m.into(),
            r_imp.into(),
            r_m.into(),
        ]);
    }
    Ok(t)
}

/// `(x, tail_pos_log, tail_neg_log, exact_density_log)`: natural logarithms of
/// the two tail asymptotes at distance `x` and of the exact density of
/// `n^{-a} S_n` at `+x`.
pub fn tails_table(ctx: &LimitLawContext, grid: &[f64], exact: &StepDensity, n: usize) -> Table {
    let mut t = Table::new(["x", "tail_pos_log", "tail_neg_log", "exact_density_log"])
        .with_meta("a", format_float(ctx.a))
        .with_meta("n", n)
        .with_meta("log", "natural");
    for &x in grid {
        t.push(vec![
            x.into(),
            tail_ln(ctx, x, Side::Positive, None).into(),
            tail_ln(ctx, x, Side::Negative, None).into(),
            exact.eval(x).ln().into(),
        ]);
    }
    t
}

/// `lo, lo + h, .., hi` with `points >= 2` entries.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo < hi) || points < 2 || !lo.is_finite() || !hi.is_finite() {
        return Err(domain("grid", format!("need lo < hi and points >= 2, got [{lo}, {hi}], {points}")));
    }
    let h = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|i| if i + 1 == points { hi } else { lo + i as f64 * h }).collect())
}
