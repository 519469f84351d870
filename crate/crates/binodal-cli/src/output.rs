//! Deterministic table and summary writers.
//!
//! CSV uses '.' decimals, 17 significant digits, a header row and LF line
//! endings, so re-running a command reproduces outputs byte for byte and
//! doubles round-trip exactly.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::{AppError, Format};

/// One table cell; floats are printed with 17 significant digits.
#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Bool(bool),
    Text(String),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => fmt_f64(*v),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(_) => Value::Null,
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Missing => Value::Null,
        }
    }
}

/// 17 significant digits in scientific notation: enough to round-trip f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Writes `name.csv` or `name.json` into `dir` depending on the format.
pub fn write_table(dir: &Path, name: &str, table: &Table, format: Format) -> Result<PathBuf, AppError> {
    fs::create_dir_all(dir)?;
    match format {
        Format::Csv => {
            let mut text = String::new();
            text.push_str(&table.columns.join(","));
            text.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                text.push_str(&cells.join(","));
                text.push('\n');
            }
            let path = dir.join(format!("{name}.csv"));
            fs::write(&path, text)?;
            Ok(path)
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut obj = serde_json::Map::new();
                    for (col, cell) in table.columns.iter().zip(row) {
                        obj.insert((*col).to_string(), cell.json());
                    }
                    Value::Object(obj)
                })
                .collect();
            let path = dir.join(format!("{name}.json"));
            fs::write(&path, format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()))?;
            Ok(path)
        }
    }
}

/// Scalar outputs of a run, with the full parameter provenance.
#[derive(Debug, Serialize)]
pub struct Summary {
    pub command: String,
    pub params: Params,
    pub results: Value,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Params {
    pub mu: f64,
    pub d1: f64,
    pub d2: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_sweep: Option<Vec<f64>>,
}

pub fn write_summary(dir: &Path, summary: &Summary) -> Result<(), AppError> {
    fs::create_dir_all(dir)?;
    let text = format!("{}\n", serde_json::to_string_pretty(summary).unwrap());
    fs::write(dir.join("summary.json"), text)?;
    Ok(())
}
