//! Report documents: JSON for machines, aligned text for people, CSV for
//! tables.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// An `lfun` prediction disagreed with the reconstructed L-series.
    Mismatch,
    /// A verify case did not reproduce its expected record.
    Failed,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub result: Value,
    /// Human summary, already aligned.
    pub text: String,
    pub csv: Option<CsvTable>,
}

#[derive(Serialize)]
struct Document<'a> {
    command: &'a str,
    status: Status,
    result: &'a Value,
}

impl Report {
    /// Pretty JSON. Object keys come out sorted, so equal results give equal
    /// bytes.
    pub fn to_json(&self) -> String {
        let doc = Document { command: self.command, status: self.status, result: &self.result };
        serde_json::to_string_pretty(&doc).expect("report is plain JSON") + "\n"
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let Some(t) = &self.csv else {
            return Err(CliError::Schema(format!("{} reports have no CSV form", self.command)));
        };
        let wrap = |e: csv::Error| CliError::Other(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(path).map_err(wrap)?;
        w.write_record(&t.header).map_err(wrap)?;
        for row in &t.rows {
            w.write_record(row).map_err(wrap)?;
        }
        w.flush().map_err(|e| CliError::io(path, e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Left-aligned columns separated by two spaces.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 < row.len() {
                line.push_str(&format!("{cell:<w$}  ", w = width[i]));
            } else {
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Shorthand for building table rows from mixed displayable values.
#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($x.to_string()),*] };
}
