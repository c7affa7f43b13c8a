//! Rendering of analysis reports as aligned text, CSV, or JSON.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Certainty;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Parse(format!("unknown output format '{s}' (expected text, csv or json)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// A tabular result with an overall verdict.
pub trait Report {
    fn command(&self) -> &'static str;
    fn precision_bits(&self) -> u32;
    fn columns(&self) -> Vec<String>;
    fn records(&self) -> Vec<Vec<String>>;
    fn json_rows(&self) -> serde_json::Value;

    fn status(&self) -> Certainty {
        Certainty::Certified
    }

    /// Extra lines shown after the table in text output.
    fn notes(&self) -> Vec<String> {
        Vec::new()
    }
}

/// Folds verdicts: any violation wins, then any inconclusive.
pub fn combine(statuses: impl IntoIterator<Item = Certainty>) -> Certainty {
    let mut out = Certainty::Certified;
    for s in statuses {
        match s {
            Certainty::Violated => return Certainty::Violated,
            Certainty::Inconclusive => out = Certainty::Inconclusive,
            Certainty::Certified => {}
        }
    }
    out
}

pub fn certainty_name(c: Certainty) -> &'static str {
    match c {
        Certainty::Certified => "certified",
        Certainty::Violated => "violated",
        Certainty::Inconclusive => "inconclusive",
    }
}

pub fn render(report: &dyn Report, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => Ok(render_text(report)),
        OutputFormat::Csv => render_csv(report),
        OutputFormat::Json => render_json(report),
    }
}

pub fn render_text(report: &dyn Report) -> String {
    let columns = report.columns();
    let records = report.records();
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for r in &records {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str(&line(&columns));
    out.push('\n');
    for r in &records {
        out.push_str(&line(r));
        out.push('\n');
    }
    for note in report.notes() {
        out.push_str(&note);
        out.push('\n');
    }
    out
}

pub fn render_csv(report: &dyn Report) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(format!("csv output failed: {e}"));
    writer.write_record(report.columns()).map_err(io)?;
    for r in report.records() {
        writer.write_record(r).map_err(io)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Parse(format!("csv output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render_json(report: &dyn Report) -> Result<String> {
    let value = serde_json::json!({
        "command": report.command(),
        "precision_bits": report.precision_bits(),
        "rows": report.json_rows(),
    });
    let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
