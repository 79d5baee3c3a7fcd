//! Flat output rows shared by the CSV and JSON writers.

use std::io::Write;

use critline_core::moments::{GramSumReport, LargeValue, MomentReport, ValueSign};
use critline_core::zeros::GramViolation;
use critline_core::{CrossingPoint, ZeroRecord};
use serde::Serialize;

use crate::format::fixed;

/// Output encodings accepted by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

/// A row type with a fixed CSV header.
pub trait Record: Serialize {
    const HEADER: &'static [&'static str];
    fn csv_fields(&self) -> Vec<String>;
}

fn opt(x: Option<f64>) -> String {
    x.map(fixed).unwrap_or_default()
}

/// Write `rows` as CSV (header always present) or as a JSON array of flat objects.
pub fn write_rows<R: Record, W: Write>(
    out: &mut W,
    rows: &[R],
    format: OutFormat,
) -> std::io::Result<()> {
    match format {
        OutFormat::Csv => {
            writeln!(out, "{}", R::HEADER.join(","))?;
            for r in rows {
                writeln!(out, "{}", r.csv_fields().join(","))?;
            }
        }
        OutFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Write a single record: one CSV row, or one JSON object.
pub fn write_one<R: Record, W: Write>(
    out: &mut W,
    row: &R,
    format: OutFormat,
) -> std::io::Result<()> {
    match format {
        OutFormat::Csv => write_rows(out, std::slice::from_ref(row), format),
        OutFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, row)?;
            writeln!(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramRow {
    pub n: i64,
    pub phi: f64,
    pub t: f64,
    pub zeta_re: f64,
    pub zeta_im: f64,
    pub directed_value: f64,
}

impl From<&CrossingPoint> for GramRow {
    fn from(p: &CrossingPoint) -> Self {
        GramRow {
            n: p.n,
            phi: p.phi.radians(),
            t: p.t,
            zeta_re: p.zeta.re,
            zeta_im: p.zeta.im,
            directed_value: p.directed_value,
        }
    }
}

impl Record for GramRow {
    const HEADER: &'static [&'static str] =
        &["n", "phi", "t", "zeta_re", "zeta_im", "directed_value"];
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fixed(self.phi),
            fixed(self.t),
            fixed(self.zeta_re),
            fixed(self.zeta_im),
            fixed(self.directed_value),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroRow {
    pub k: usize,
    pub gamma: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub refined_accuracy: f64,
}

impl From<&ZeroRecord> for ZeroRow {
    fn from(z: &ZeroRecord) -> Self {
        ZeroRow {
            k: z.k,
            gamma: z.gamma,
            bracket_lo: z.bracket.0,
            bracket_hi: z.bracket.1,
            refined_accuracy: z.refined_accuracy,
        }
    }
}

impl Record for ZeroRow {
    const HEADER: &'static [&'static str] =
        &["k", "gamma", "bracket_lo", "bracket_hi", "refined_accuracy"];
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            fixed(self.gamma),
            fixed(self.bracket_lo),
            fixed(self.bracket_hi),
            fixed(self.refined_accuracy),
        ]
    }
}

/// A [`MomentReport`] flattened, with pass/fail against a relative tolerance.
///
/// When the first main term vanishes (φ = π/2) `rel_dev1` and `pass_first`
/// are null and `abs_sum1` carries `|sum1|` instead.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentRow {
    pub phi: f64,
    pub t_max: f64,
    pub count_delta: usize,
    pub count_zeros: usize,
    pub coincidences: usize,
    pub count_total: usize,
    pub count_nonzero: usize,
    pub sum1_re: f64,
    pub sum1_im: f64,
    pub sum2: f64,
    pub mean_re: f64,
    pub mean_im: f64,
    pub main1_re: f64,
    pub main1_im: f64,
    pub main2: f64,
    pub rel_dev1: Option<f64>,
    pub abs_sum1: Option<f64>,
    pub rel_dev2: f64,
    pub ambiguous_blocks: usize,
    pub tolerance: f64,
    pub pass_first: Option<bool>,
    pub pass_second: bool,
    pub pass: bool,
}

impl MomentRow {
    pub fn new(r: &MomentReport, tolerance: f64) -> Self {
        let pass_first = r.rel_dev1.map(|d| d <= tolerance);
        let pass_second = r.rel_dev2 <= tolerance;
        MomentRow {
            phi: r.phi.radians(),
            t_max: r.t_max,
            count_delta: r.count_delta,
            count_zeros: r.count_zeros,
            coincidences: r.coincidences,
            count_total: r.count_total,
            count_nonzero: r.count_nonzero,
            sum1_re: r.sum1.re,
            sum1_im: r.sum1.im,
            sum2: r.sum2,
            mean_re: r.mean.re,
            mean_im: r.mean.im,
            main1_re: r.main1.re,
            main1_im: r.main1.im,
            main2: r.main2,
            rel_dev1: r.rel_dev1,
            abs_sum1: r.rel_dev1.is_none().then(|| r.sum1.norm()),
            rel_dev2: r.rel_dev2,
            ambiguous_blocks: r.zero_scan_ambiguous.len(),
            tolerance,
            pass_first,
            pass_second,
            pass: pass_first.unwrap_or(true) && pass_second,
        }
    }
}

impl Record for MomentRow {
    const HEADER: &'static [&'static str] = &[
        "phi",
        "t_max",
        "count_delta",
        "count_zeros",
        "coincidences",
        "count_total",
        "count_nonzero",
        "sum1_re",
        "sum1_im",
        "sum2",
        "mean_re",
        "mean_im",
        "main1_re",
        "main1_im",
        "main2",
        "rel_dev1",
        "abs_sum1",
        "rel_dev2",
        "ambiguous_blocks",
        "tolerance",
        "pass_first",
        "pass_second",
        "pass",
    ];
    fn csv_fields(&self) -> Vec<String> {
        vec![
            fixed(self.phi),
            fixed(self.t_max),
            self.count_delta.to_string(),
            self.count_zeros.to_string(),
            self.coincidences.to_string(),
            self.count_total.to_string(),
            self.count_nonzero.to_string(),
            fixed(self.sum1_re),
            fixed(self.sum1_im),
            fixed(self.sum2),
            fixed(self.mean_re),
            fixed(self.mean_im),
            fixed(self.main1_re),
            fixed(self.main1_im),
            fixed(self.main2),
            opt(self.rel_dev1),
            opt(self.abs_sum1),
            fixed(self.rel_dev2),
            self.ambiguous_blocks.to_string(),
            fixed(self.tolerance),
            self.pass_first.map(|b| b.to_string()).unwrap_or_default(),
            self.pass_second.to_string(),
            self.pass.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramSumRow {
    pub n: usize,
    pub sum_z: f64,
    pub sum_z2: f64,
    pub sum_z4: f64,
    pub sum_pair: f64,
    pub ratio_first: f64,
    pub ratio_second: f64,
    pub ratio_pair: f64,
    pub ratio_fourth: f64,
}

impl From<&GramSumReport> for GramSumRow {
    fn from(g: &GramSumReport) -> Self {
        GramSumRow {
            n: g.n,
            sum_z: g.sum_z,
            sum_z2: g.sum_z2,
            sum_z4: g.sum_z4,
            sum_pair: g.sum_pair,
            ratio_first: g.ratios.first,
            ratio_second: g.ratios.second,
            ratio_pair: g.ratios.pair,
            ratio_fourth: g.ratios.fourth,
        }
    }
}

impl Record for GramSumRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "sum_z",
        "sum_z2",
        "sum_z4",
        "sum_pair",
        "ratio_first",
        "ratio_second",
        "ratio_pair",
        "ratio_fourth",
    ];
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fixed(self.sum_z),
            fixed(self.sum_z2),
            fixed(self.sum_z4),
            fixed(self.sum_pair),
            fixed(self.ratio_first),
            fixed(self.ratio_second),
            fixed(self.ratio_pair),
            fixed(self.ratio_fourth),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LargeValueRow {
    pub t: f64,
    pub directed_value: f64,
    pub threshold: f64,
    pub sign: &'static str,
}

impl From<&LargeValue> for LargeValueRow {
    fn from(v: &LargeValue) -> Self {
        LargeValueRow {
            t: v.t,
            directed_value: v.directed_value,
            threshold: v.t.ln().sqrt(),
            sign: match v.sign {
                ValueSign::Positive => "positive",
                ValueSign::Negative => "negative",
            },
        }
    }
}

impl Record for LargeValueRow {
    const HEADER: &'static [&'static str] = &["t", "directed_value", "threshold", "sign"];
    fn csv_fields(&self) -> Vec<String> {
        vec![
            fixed(self.t),
            fixed(self.directed_value),
            fixed(self.threshold),
            self.sign.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRow {
    pub n: i64,
    pub t: f64,
    pub z: f64,
    pub zeta: f64,
}

impl From<&GramViolation> for ViolationRow {
    fn from(v: &GramViolation) -> Self {
        let sign = if v.n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        ViolationRow {
            n: v.n,
            t: v.t,
            z: v.z,
            zeta: sign * v.z,
        }
    }
}

impl Record for ViolationRow {
    const HEADER: &'static [&'static str] = &["n", "t", "z", "zeta"];
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fixed(self.t),
            fixed(self.z),
            fixed(self.zeta),
        ]
    }
}

/// One point of the curve export; `set` is `curve`, `circle` or `line`, and
/// `param` is t, φ or the signed distance along the line respectively.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub set: &'static str,
    pub param: f64,
    pub re: f64,
    pub im: f64,
}

impl Record for CurveRow {
    const HEADER: &'static [&'static str] = &["set", "param", "re", "im"];
    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.set.to_string(),
            fixed(self.param),
            fixed(self.re),
            fixed(self.im),
        ]
    }
}
