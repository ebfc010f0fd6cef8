//! File formats: edge lists, signals, spectra, complex matrices and sweep
//! tables (CSV), plus JSON bundles.
//!
//! Every number written by this module is rounded to 12 significant digits
//! first and then printed in shortest round-trip form.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge};
use crate::linalg::{c, CMatrix, CVector, C64};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

pub fn fmt_num(x: f64) -> String {
    format!("{}", round_sig(x))
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(r)
}

fn expect_header<R: Read>(rdr: &mut csv::Reader<R>, want: &[&str]) -> Result<()> {
    let got = rdr.headers()?;
    if got.iter().ne(want.iter().cloned()) {
        return Err(Error::Parse(format!(
            "expected header `{}`, found `{}`",
            want.join(","),
            got.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: u64) -> Result<T> {
    let raw = rec
        .get(i)
        .ok_or_else(|| Error::Parse(format!("line {line}: missing column {i}")))?;
    raw.parse()
        .map_err(|_| Error::Parse(format!("line {line}: cannot parse `{raw}`")))
}

fn line_of(rec: &csv::StringRecord) -> u64 {
    rec.position().map(|p| p.line()).unwrap_or(0)
}

/// Reads `src,dst,weight`. The vertex count is `n` when given, otherwise one
/// more than the largest index seen.
pub fn read_edge_list<R: Read>(r: R, n: Option<usize>) -> Result<DirectedGraph> {
    let mut rdr = reader(r);
    expect_header(&mut rdr, &["src", "dst", "weight"])?;
    let mut edges = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        edges.push(Edge {
            src: parse_field(&rec, 0, line)?,
            dst: parse_field(&rec, 1, line)?,
            weight: parse_field(&rec, 2, line)?,
        });
    }
    let inferred = edges
        .iter()
        .map(|e| e.src.max(e.dst) + 1)
        .max()
        .unwrap_or(0);
    let n = n.unwrap_or(inferred);
    DirectedGraph::new(n, edges)
}

pub fn write_edge_list<W: Write>(w: W, g: &DirectedGraph) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(["src", "dst", "weight"])?;
    for e in g.edges() {
        wtr.write_record([e.src.to_string(), e.dst.to_string(), fmt_num(e.weight)])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads `vertex,re,im`. Every vertex `0..n` must appear exactly once.
pub fn read_signal<R: Read>(r: R) -> Result<CVector> {
    let mut rdr = reader(r);
    expect_header(&mut rdr, &["vertex", "re", "im"])?;
    let mut rows: Vec<(usize, C64)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        rows.push((
            parse_field(&rec, 0, line)?,
            c(parse_field(&rec, 1, line)?, parse_field(&rec, 2, line)?),
        ));
    }
    let n = rows.len();
    let mut out = vec![None; n];
    for (v, z) in rows {
        if v >= n {
            return Err(Error::Parse(format!(
                "vertex {v} out of range for {n} rows"
            )));
        }
        if out[v].replace(z).is_some() {
            return Err(Error::Parse(format!("vertex {v} listed twice")));
        }
    }
    Ok(CVector::from_iterator(
        n,
        out.into_iter().map(|z| z.unwrap()),
    ))
}

pub fn write_signal<W: Write>(w: W, x: &CVector) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(["vertex", "re", "im"])?;
    for (i, z) in x.iter().enumerate() {
        wtr.write_record([i.to_string(), fmt_num(z.re), fmt_num(z.im)])?;
    }
    wtr.flush()?;
    Ok(())
}

/// `k,re_lambda,im_lambda,abs_lambda`, zero-based `k` in frequency order.
pub fn write_spectrum<W: Write>(w: W, lambdas: &[C64]) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(["k", "re_lambda", "im_lambda", "abs_lambda"])?;
    for (k, z) in lambdas.iter().enumerate() {
        wtr.write_record([
            k.to_string(),
            fmt_num(z.re),
            fmt_num(z.im),
            fmt_num(z.norm()),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_spectrum<R: Read>(r: R) -> Result<Vec<C64>> {
    let mut rdr = reader(r);
    expect_header(&mut rdr, &["k", "re_lambda", "im_lambda", "abs_lambda"])?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let k: usize = parse_field(&rec, 0, line)?;
        if k != out.len() {
            return Err(Error::Parse(format!(
                "line {line}: expected k = {}",
                out.len()
            )));
        }
        out.push(c(parse_field(&rec, 1, line)?, parse_field(&rec, 2, line)?));
    }
    Ok(out)
}

/// Dense complex matrix, one row per line, cells `re;im`, no header.
pub fn write_matrix<W: Write>(w: W, m: &CMatrix) -> Result<()> {
    let mut wtr = writer(w);
    for i in 0..m.nrows() {
        wtr.write_record(
            (0..m.ncols()).map(|j| format!("{};{}", fmt_num(m[(i, j)].re), fmt_num(m[(i, j)].im))),
        )?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_matrix<R: Read>(r: R) -> Result<CMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(r);
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = line_of(&rec);
        let row = rec
            .iter()
            .map(|cell| {
                let (re, im) = cell.split_once(';').ok_or_else(|| {
                    Error::Parse(format!("line {line}: cell `{cell}` is not re;im"))
                })?;
                let p = |s: &str| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("line {line}: cannot parse `{s}`")))
                };
                Ok(c(p(re)?, p(im)?))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(CMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

/// Condensed decomposition export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionBundle {
    pub lambdas: Vec<[f64; 2]>,
    pub kappa: f64,
    pub henrici: f64,
    pub residual: f64,
}

impl DecompositionBundle {
    pub fn new(lambdas: &[C64], kappa: f64, henrici: f64, residual: f64) -> Self {
        Self {
            lambdas: lambdas
                .iter()
                .map(|z| [round_sig(z.re), round_sig(z.im)])
                .collect(),
            kappa: round_sig(kappa),
            henrici: round_sig(henrici),
            residual: round_sig(residual),
        }
    }
}

/// Sampling plan export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanExport {
    pub omega: Vec<usize>,
    pub sample_set: Vec<usize>,
    pub gamma: f64,
    pub b_norm: f64,
    /// Tight noise certificate per unit noise norm; `null` for rank-deficient plans.
    pub certificate: Option<f64>,
}

/// One row of `sigma,trial,graph,err_l2,bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sigma: f64,
    pub trial: usize,
    pub graph: String,
    pub err_l2: f64,
    pub bound: f64,
}

pub fn write_sweep<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record(["sigma", "trial", "graph", "err_l2", "bound"])?;
    for r in rows {
        wtr.write_record([
            fmt_num(r.sigma),
            r.trial.to_string(),
            r.graph.clone(),
            fmt_num(r.err_l2),
            fmt_num(r.bound),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_sweep<R: Read>(r: R) -> Result<Vec<SweepRow>> {
    let mut rdr = reader(r);
    expect_header(&mut rdr, &["sigma", "trial", "graph", "err_l2", "bound"])?;
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Serializes as pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}
