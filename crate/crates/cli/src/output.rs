use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use weilstar::config::OutputFormat;
use weilstar::report::Report;
use weilstar::weil::CocycleRecord;

/// What a command produces: a report, optionally with table rows.
pub enum Emission {
    Report(Report),
    Cocycles(Report, Vec<CocycleRecord>),
}

#[derive(Serialize)]
struct CocycleRow<'a> {
    g_word: &'a str,
    h_word: &'a str,
    c_formula_re: f64,
    c_formula_im: f64,
    c_operational_re: f64,
    c_operational_im: f64,
    delta_g_re: f64,
    delta_g_im: f64,
    delta_h_re: f64,
    delta_h_im: f64,
    delta_gh_re: f64,
    delta_gh_im: f64,
    residual: f64,
}

#[derive(Serialize)]
struct CocycleJson<'a> {
    #[serde(flatten)]
    report: &'a Report,
    rows: &'a [CocycleRecord],
}

fn csv_bytes<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<Vec<u8>, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| e.to_string())?;
    }
    w.into_inner().map_err(|e| e.to_string())
}

fn text(report: &Report) -> String {
    let mut out = format!("{} on {}\n", report.command, report.ring);
    for r in &report.records {
        let status = match r.status {
            weilstar::report::Status::Pass => "PASS",
            weilstar::report::Status::Fail => "FAIL",
        };
        out.push_str(&format!("{status} {} [{}] max deviation {:.3e}\n", r.property, r.instance, r.max_deviation));
    }
    for (k, v) in &report.observations {
        out.push_str(&format!("{k}: {v}\n"));
    }
    out
}

pub fn render(emission: &Emission, format: OutputFormat) -> Result<Vec<u8>, String> {
    let report = match emission {
        Emission::Report(r) | Emission::Cocycles(r, _) => r,
    };
    match (format, emission) {
        (OutputFormat::Json, Emission::Report(r)) => Ok((r.to_json() + "\n").into_bytes()),
        (OutputFormat::Json, Emission::Cocycles(r, rows)) => {
            let json = serde_json::to_string_pretty(&CocycleJson { report: r, rows }).map_err(|e| e.to_string())?;
            Ok((json + "\n").into_bytes())
        }
        (OutputFormat::Csv, Emission::Cocycles(_, rows)) => csv_bytes(rows.iter().map(|r| CocycleRow {
            g_word: &r.g_word,
            h_word: &r.h_word,
            c_formula_re: r.c_formula[0],
            c_formula_im: r.c_formula[1],
            c_operational_re: r.c_operational[0],
            c_operational_im: r.c_operational[1],
            delta_g_re: r.delta_g[0],
            delta_g_im: r.delta_g[1],
            delta_h_re: r.delta_h[0],
            delta_h_im: r.delta_h[1],
            delta_gh_re: r.delta_gh[0],
            delta_gh_im: r.delta_gh[1],
            residual: r.residual,
        })),
        (OutputFormat::Csv, Emission::Report(r)) => csv_bytes(&r.records),
        (OutputFormat::Text, _) => Ok(text(report).into_bytes()),
    }
}

pub fn write(bytes: &[u8], path: Option<&Path>) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes),
        None => std::io::stdout().write_all(bytes),
    }
}
