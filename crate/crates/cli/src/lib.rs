//! Scenario runner behind the `dlambda` binary: computes the tables of a
//! named figure scenario and writes them as CSV, NDJSON and SVG.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod output;
pub mod scenario;
pub mod settings;
pub mod svg;
pub mod table;

use std::path::{Path, PathBuf};

pub use error::{CliError, Result};
pub use scenario::{compute, Outcome, Scenario, ScenarioName};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Ndjson,
    Svg,
}

impl Format {
    pub fn parse_list(list: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for item in list.split(',').map(str::trim) {
            let f = match item {
                "csv" => Self::Csv,
                "ndjson" => Self::Ndjson,
                "svg" => Self::Svg,
                other => return Err(CliError::Usage(format!("unknown format '{other}' (csv, ndjson, svg)"))),
            };
            if !out.contains(&f) {
                out.push(f);
            }
        }
        Ok(out)
    }
}

/// Files written by [`run`] and the summary lines for standard output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
}

/// Computes `scenario` and writes `<scenario>_<table>.{csv,ndjson}` and
/// `<scenario>_<plot>.svg` into `out_dir`.
pub fn run(scenario: &Scenario, out_dir: &Path, formats: &[Format]) -> Result<RunReport> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let outcome = compute(scenario)?;
    let meta = scenario.metadata();
    let stem = scenario.name.as_str();
    let mut files = Vec::new();
    for table in &outcome.tables {
        for format in formats {
            match format {
                Format::Csv => {
                    let path = out_dir.join(format!("{stem}_{}.csv", table.name));
                    output::write_csv(&path, &meta, table)?;
                    files.push(path);
                }
                Format::Ndjson => {
                    let path = out_dir.join(format!("{stem}_{}.ndjson", table.name));
                    output::write_ndjson(&path, &meta, table)?;
                    files.push(path);
                }
                Format::Svg => {
                    for plot in &table.plots {
                        let path = out_dir.join(format!("{stem}_{}.svg", plot.name));
                        let doc = svg::emit_svg(&meta, table, plot)?;
                        std::fs::write(&path, doc).map_err(|e| CliError::io(&path, e))?;
                        files.push(path);
                    }
                }
            }
        }
    }
    Ok(RunReport { files, summary: outcome.summary })
}
