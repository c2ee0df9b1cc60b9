//! Report records and their CSV, JSON and table renderings.
//!
//! JSON floats carry 17 significant digits so that parsing a report and
//! writing it again reproduces the same bytes. Tables use 12.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::lab::{CellGradient, CellOutcome, ConvergenceRow, RateFit, SchwarzReport};

pub const JSON_DIGITS: usize = 17;
pub const TABLE_DIGITS: usize = 12;

/// Pretty JSON formatter that writes every float as `d.dddddddddddddddde±x`.
pub struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Default for ExactFloats<'_> {
    fn default() -> Self {
        Self(PrettyFormatter::with_indent(b"  "))
    }
}

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{:.*e}", JSON_DIGITS - 1, value)
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serialize with [`ExactFloats`], newline-terminated. Non-finite floats become `null`.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats::default());
    value.serialize(&mut ser).map_err(|e| Error::Config(format!("JSON output: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Parse and write back a JSON report.
pub fn reformat_json(text: &str) -> Result<String> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("JSON input: {e}")))?;
    to_json(&v)
}

/// `x` with `sig` significant digits, positional for moderate magnitudes and
/// exponential otherwise, trailing zeros trimmed.
pub fn format_sig(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..sig as i32).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_zeros(&s).to_string()
    } else {
        let s = format!("{:.*e}", sig - 1, x);
        let (mantissa, e) = s.split_once('e').expect("exponent");
        format!("{}e{e}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format_sig(*x, TABLE_DIGITS)).collect();
    format!("({})", parts.join(", "))
}

/// Comma-separated text with a header row. Floats use Rust's shortest
/// round-trip form, which never depends on locale.
pub fn to_csv(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::Config(format!("CSV output: {e}"));
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(r).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("CSV output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

fn csv_float(x: Option<f64>) -> String {
    x.filter(|v| v.is_finite()).map(|v| v.to_string()).unwrap_or_default()
}

fn csv_components(v: Option<&[f64]>, n: usize) -> Vec<String> {
    match v {
        Some(v) => v.iter().map(|x| csv_float(Some(*x))).collect(),
        None => vec![String::new(); n],
    }
}

/// One sweep row in report form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeRecord {
    pub h: f64,
    pub tau: f64,
    pub r_naive: Option<Vec<f64>>,
    pub r_mean: Option<Vec<f64>>,
    pub err_naive: Option<f64>,
    pub err_mean: Option<f64>,
    pub status: String,
    pub detail: Option<String>,
}

impl From<&ConvergenceRow> for ConvergeRecord {
    fn from(r: &ConvergenceRow) -> Self {
        let detail = [&r.r_mean, &r.r_naive].into_iter().find_map(|o| match o {
            crate::lab::RowOutcome::Ok(_) => None,
            crate::lab::RowOutcome::Degenerate(m)
            | crate::lab::RowOutcome::Domain(m)
            | crate::lab::RowOutcome::Failed(m) => Some(m.clone()),
        });
        Self {
            h: r.h,
            tau: r.tau,
            r_naive: r.r_naive.value().map(|v| v.components().to_vec()),
            r_mean: r.r_mean.value().map(|v| v.components().to_vec()),
            err_naive: r.err_naive,
            err_mean: r.err_mean,
            status: r.status().to_string(),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeReport {
    pub field: String,
    pub family: String,
    pub center: Vec<f64>,
    pub reference: Vec<f64>,
    pub last_decade_rate: RateFit,
    pub rows: Vec<ConvergeRecord>,
}

impl ConvergeReport {
    pub fn to_csv(&self) -> Result<String> {
        let n = self.center.len();
        let mut header = vec!["h".to_string(), "tau".into()];
        header.extend((1..=n).map(|i| format!("r_naive_{i}")));
        header.extend((1..=n).map(|i| format!("r_mean_{i}")));
        header.extend(["err_naive", "err_mean", "status"].map(String::from));
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![csv_float(Some(r.h)), csv_float(Some(r.tau))];
                row.extend(csv_components(r.r_naive.as_deref(), n));
                row.extend(csv_components(r.r_mean.as_deref(), n));
                row.extend([csv_float(r.err_naive), csv_float(r.err_mean), r.status.clone()]);
                row
            })
            .collect();
        to_csv(&header, &rows)
    }
}

pub const NAIVE_NOTE: &str = "naive (no mirror samples)";
pub const MEAN_NOTE: &str = "mean";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub cell: usize,
    pub centroid: Vec<f64>,
    pub gradient: Option<Vec<f64>>,
    pub tau: f64,
    pub status: String,
    pub estimator: String,
    pub detail: Option<String>,
}

impl From<&CellGradient> for CellRecord {
    fn from(c: &CellGradient) -> Self {
        let (estimator, detail) = match &c.outcome {
            CellOutcome::Mean { .. } => (MEAN_NOTE, None),
            CellOutcome::Naive { .. } => (NAIVE_NOTE, None),
            CellOutcome::Degenerate { tau, threshold } => {
                ("", Some(format!("degenerate simplex: |tau| = {tau:e} <= {threshold:e}")))
            }
            CellOutcome::Domain { message } | CellOutcome::Failed { message } => ("", Some(message.clone())),
        };
        Self {
            cell: c.cell,
            centroid: c.centroid.components().to_vec(),
            gradient: c.outcome.value().map(|v| v.components().to_vec()),
            tau: c.tau,
            status: c.outcome.status().to_string(),
            estimator: estimator.to_string(),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshReport {
    pub dimension: usize,
    pub cells: Vec<CellRecord>,
}

impl MeshReport {
    pub fn to_csv(&self) -> Result<String> {
        let n = self.dimension;
        let mut header = vec!["cell".to_string()];
        header.extend((1..=n).map(|i| format!("centroid_{i}")));
        header.extend((1..=n).map(|i| format!("r_{i}")));
        header.extend(["tau", "status", "estimator"].map(String::from));
        let rows: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|c| {
                let mut row = vec![c.cell.to_string()];
                row.extend(csv_components(Some(&c.centroid), n));
                row.extend(csv_components(c.gradient.as_deref(), n));
                row.extend([csv_float(Some(c.tau)), c.status.clone(), c.estimator.clone()]);
                row
            })
            .collect();
        to_csv(&header, &rows)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradReport {
    pub field: String,
    pub vertices: Vec<Vec<f64>>,
    pub gradient: Vec<f64>,
    pub tau: f64,
    pub evaluations: usize,
    pub chain_min_diff: f64,
    pub residual_grades: f64,
}

impl GradReport {
    pub fn to_table(&self) -> String {
        format!(
            "field        {}\nr_mean       {}\ntau          {}\nevaluations  {}\nmin chain    {}\nresidual     {}\n",
            self.field,
            format_vec(&self.gradient),
            format_sig(self.tau, TABLE_DIGITS),
            self.evaluations,
            format_sig(self.chain_min_diff, TABLE_DIGITS),
            format_sig(self.residual_grades, TABLE_DIGITS),
        )
    }
}

/// Fixed-width table of the Schwarz demo followed by its verdict lines.
pub fn schwarz_table(report: &SchwarzReport) -> String {
    let mut out = format!(
        "{:<18} {:>8} {:>20} {:>20} {:>20} {:>20}\n",
        "family", "alpha", "beta", "r_naive.e2", "closed form", "|r_mean|"
    );
    for r in &report.rows {
        out.push_str(&format!(
            "{:<18} {:>8} {:>20} {:>20} {:>20} {:>20}\n",
            r.family,
            format_sig(r.alpha, TABLE_DIGITS),
            format_sig(r.beta, TABLE_DIGITS),
            format_sig(r.r_naive[1], TABLE_DIGITS),
            format_sig(r.closed_form, TABLE_DIGITS),
            format_sig(r.r_mean.norm(), TABLE_DIGITS),
        ));
    }
    out.push('\n');
    for v in &report.verdicts {
        out.push_str(&v.text);
        out.push('\n');
    }
    out
}
