//! CSV and NDJSON writers. Every file opens with the run metadata.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{CliError, Result};
use crate::table::Table;

pub type Meta = [(String, String)];

/// `nan` for undefined values, shortest round-trip decimal otherwise.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else {
        x.to_string()
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

pub fn write_csv(path: &Path, meta: &Meta, table: &Table) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| CliError::io(path, e);
    for (k, v) in meta.iter().chain(&table.meta) {
        writeln!(out, "# {k}: {v}").map_err(io)?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&x| format_number(x)))?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// First line `{"meta": {...}}`, then one object per row; undefined
/// values become `null`.
pub fn write_ndjson(path: &Path, meta: &Meta, table: &Table) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| CliError::io(path, e);
    let header: Map<String, Value> =
        meta.iter().chain(&table.meta).map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    let mut first = Map::new();
    first.insert("meta".to_owned(), Value::Object(header));
    writeln!(out, "{}", Value::Object(first)).map_err(io)?;
    for row in &table.rows {
        let obj: Map<String, Value> = table.columns.iter().cloned().zip(row.iter().map(|&x| number(x))).collect();
        writeln!(out, "{}", Value::Object(obj)).map_err(io)?;
    }
    out.flush().map_err(io)
}
