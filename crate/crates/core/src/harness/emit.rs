use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::compare::{CompareRow, CompareTable};
use super::config::Format;
use crate::error::{Error, Result};

#[derive(Serialize)]
struct CsvRow<'a> {
    model_id: &'a str,
    n: f64,
    alpha: f64,
    #[serde(rename = "L")]
    len: usize,
    exact_re: f64,
    exact_im: f64,
    leading_re: f64,
    leading_im: f64,
    dev: f64,
    dev_improved: f64,
    mu: f64,
    cft_2mu: f64,
}

impl<'a> From<&'a CompareRow> for CsvRow<'a> {
    fn from(r: &'a CompareRow) -> Self {
        CsvRow {
            model_id: &r.model_id,
            n: r.n,
            alpha: r.alpha,
            len: r.len,
            exact_re: r.exact.re,
            exact_im: r.exact.im,
            leading_re: r.leading.re,
            leading_im: r.leading.im,
            dev: r.dev,
            dev_improved: r.dev_improved,
            mu: r.mu,
            cft_2mu: r.cft_2mu,
        }
    }
}

const COMPARE_HEADER: [&str; 12] = [
    "model_id", "n", "alpha", "L", "exact_re", "exact_im", "leading_re", "leading_im", "dev", "dev_improved", "mu",
    "cft_2mu",
];

/// Serializes any row type as CSV with a header line. An empty slice gives
/// an empty string, since the header comes from the first row.
pub fn rows_to_csv<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Computation(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Computation(e.to_string()))
}

/// The comparison table as CSV; header only when there are no rows.
pub fn table_to_csv(table: &CompareTable) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(COMPARE_HEADER)?;
    for r in &table.rows {
        w.serialize(CsvRow::from(r))?;
    }
    finish(w)
}

pub fn table_to_json(table: &CompareTable) -> Result<String> {
    Ok(serde_json::to_string_pretty(table)?)
}

pub fn table_from_json(text: &str) -> Result<CompareTable> {
    Ok(serde_json::from_str(text)?)
}

/// Writes the table to `path`, or to stdout when `path` is `None`.
pub fn emit(table: &CompareTable, format: Format, path: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Csv => table_to_csv(table)?,
        Format::Json => table_to_json(table)? + "\n",
    };
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io { path: p.to_path_buf(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io { path: "<stdout>".into(), source }),
    }
}
