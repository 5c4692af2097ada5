//! Text, JSON and CSV encodings of command output.
//!
//! Floats are written in shortest round-trip form; nothing depends on the
//! locale, the clock or the thread count, so reruns are byte-identical.

use std::fmt::Write as _;

use hypvol::certify::{CellRecord, CertReport, Rect};
use serde::Serialize;

use crate::{CliError, Format, Output, PlotRow, RunConfig, TableRow};

/// Version of the text and JSON layouts.
pub const FORMAT_VERSION: u32 = 1;

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".into(), |v| v.to_string())
}

fn rect_str(r: &Rect) -> String {
    format!("{},{},{},{}", r.a, r.b, r.c, r.d)
}

pub(crate) fn report(config: &RunConfig, output: &Output) -> Result<String, CliError> {
    match config.format {
        Format::Text => Ok(text(config, output)),
        Format::Json => json(config, output),
        Format::Csv => csv_report(output),
    }
}

fn text(config: &RunConfig, output: &Output) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "hypvol report format {FORMAT_VERSION}");
    let _ = writeln!(s, "command: {}", config.command.name());
    match output {
        Output::Table(rows) => {
            let _ = writeln!(s, "\nx  Y  V_truncated  V");
            for r in rows {
                let _ = writeln!(s, "{}  {}  {}  {}", r.x, r.y, r.volume_truncated, r.volume);
            }
        }
        Output::Plot(rows) => {
            let _ = writeln!(s, "\nx  cosh_E  cosh_M  diagonal  Y");
            let cell = |v: Option<f64>| v.map_or_else(|| "-".into(), |v| v.to_string());
            for r in rows {
                let _ = writeln!(
                    s,
                    "{}  {}  {}  {}  {}",
                    r.x,
                    cell(r.cosh_e),
                    cell(r.cosh_m),
                    r.diagonal,
                    cell(r.y)
                );
            }
        }
        Output::Reports(reports) => {
            for (i, r) in reports.iter().enumerate() {
                let _ = writeln!(s, "\n[piece {}]", i + 1);
                let _ = writeln!(s, "rect: {}", rect_str(&r.rect));
                let _ = writeln!(s, "grid: {}", r.grid);
                let _ = writeln!(s, "regime: {}", r.regime);
                let _ = writeln!(s, "precision: {}", r.precision);
                let _ = writeln!(s, "cells_total: {}", r.cells_total);
                let _ = writeln!(s, "cells_feasible: {}", r.cells_feasible);
                let _ = writeln!(s, "min_bound: {}", opt(r.min_bound));
                let _ = writeln!(s, "min_bound_truncated: {}", opt(r.min_bound_truncated));
                let argmin = r.argmin.as_ref().map_or_else(|| "none".into(), rect_str);
                let _ = writeln!(s, "argmin: {argmin}");
            }
            let overall = reports
                .iter()
                .filter_map(|r| r.min_bound)
                .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))));
            let _ = writeln!(s, "\noverall_min_bound: {}", opt(overall));
        }
    }
    s
}

#[derive(Serialize)]
struct JsonDoc<'a, T: Serialize> {
    format_version: u32,
    command: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

#[derive(Serialize)]
#[serde(untagged)]
enum JsonBody<'a> {
    Table { rows: &'a [TableRow] },
    Plot { rows: &'a [PlotRow] },
    Reports { reports: &'a [CertReport] },
}

fn json(config: &RunConfig, output: &Output) -> Result<String, CliError> {
    let body = match output {
        Output::Table(rows) => JsonBody::Table { rows },
        Output::Plot(rows) => JsonBody::Plot { rows },
        Output::Reports(reports) => JsonBody::Reports { reports },
    };
    let doc = JsonDoc {
        format_version: FORMAT_VERSION,
        command: config.command.name(),
        body: &body,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

/// Flat summary of one report.
#[derive(Serialize)]
struct SummaryRow {
    piece: usize,
    rect_a: f64,
    rect_b: f64,
    rect_c: f64,
    rect_d: f64,
    grid_dx: f64,
    grid_dy: f64,
    regime: String,
    precision: String,
    cells_total: usize,
    cells_feasible: usize,
    min_bound: Option<f64>,
    min_bound_truncated: Option<f64>,
    argmin_a: Option<f64>,
    argmin_b: Option<f64>,
    argmin_c: Option<f64>,
    argmin_d: Option<f64>,
}

impl SummaryRow {
    fn new(piece: usize, r: &CertReport) -> Self {
        SummaryRow {
            piece,
            rect_a: r.rect.a,
            rect_b: r.rect.b,
            rect_c: r.rect.c,
            rect_d: r.rect.d,
            grid_dx: r.grid.dx,
            grid_dy: r.grid.dy,
            regime: r.regime.to_string(),
            precision: r.precision.to_string(),
            cells_total: r.cells_total,
            cells_feasible: r.cells_feasible,
            min_bound: r.min_bound,
            min_bound_truncated: r.min_bound_truncated,
            argmin_a: r.argmin.map(|c| c.a),
            argmin_b: r.argmin.map(|c| c.b),
            argmin_c: r.argmin.map(|c| c.c),
            argmin_d: r.argmin.map(|c| c.d),
        }
    }
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_report(output: &Output) -> Result<String, CliError> {
    match output {
        Output::Table(rows) => to_csv(rows),
        Output::Plot(rows) => to_csv(rows),
        Output::Reports(reports) => to_csv(
            reports
                .iter()
                .enumerate()
                .map(|(i, r)| SummaryRow::new(i + 1, r)),
        ),
    }
}

#[derive(Serialize)]
struct CellRow {
    piece: usize,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    muffin_sum: f64,
    with_collar: f64,
    best: f64,
    c1: bool,
    c2: bool,
    c3: bool,
}

impl CellRow {
    fn new(piece: usize, r: &CellRecord) -> Self {
        CellRow {
            piece,
            a: r.cell.a,
            b: r.cell.b,
            c: r.cell.c,
            d: r.cell.d,
            muffin_sum: r.muffin_sum,
            with_collar: r.with_collar,
            best: r.best,
            c1: r.embedding.c1,
            c2: r.embedding.c2,
            c3: r.embedding.c3,
        }
    }
}

/// One row per feasible cell, in piece then row-major order.
pub(crate) fn cells(reports: &[CertReport], json: bool) -> Result<String, CliError> {
    let rows = reports
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.cells.iter().map(move |c| CellRow::new(i + 1, c)));
    if json {
        let rows: Vec<_> = rows.collect();
        let mut s = serde_json::to_string(&rows)?;
        s.push('\n');
        Ok(s)
    } else {
        to_csv(rows)
    }
}
