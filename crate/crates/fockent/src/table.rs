//! Tabular output shared by every command: CSV rows and the JSON rendering
//! of the same cells.

use std::str::FromStr;

use fockent_core::ExactNonnegativeRational;
use serde_json::{Map, Number, Value};

use crate::error::{CliError, CliResult};

/// Scientific notation with 17 significant digits and a signed exponent,
/// e.g. `1.8000000000000000e+0`; round-trips every finite `f64`. Negative
/// zero prints as zero.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

/// JSON number carrying the [`format_float`] digits verbatim; `null` for
/// non-finite values.
pub fn float_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&format_float(x)).expect("formatted float is a JSON number"))
}

pub fn rational_value(r: &ExactNonnegativeRational) -> Value {
    Value::String(r.to_fraction_string())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn csv_field(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => format_float(*x),
            Cell::Float(x) => x.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn json_value(&self) -> Value {
        match self {
            Cell::Int(i) => Value::Number((*i).into()),
            Cell::Float(x) => float_value(*x),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&ExactNonnegativeRational> for Cell {
    fn from(v: &ExactNonnegativeRational) -> Self {
        Cell::Text(v.to_fraction_string())
    }
}

impl From<Option<&ExactNonnegativeRational>> for Cell {
    fn from(v: Option<&ExactNonnegativeRational>) -> Self {
        v.map_or(Cell::Empty, Cell::from)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// Rows of equal length under a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<Cell>>) {
        for row in rows {
            self.push(row);
        }
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// UTF-8, comma-separated, header first, LF line endings.
    pub fn to_csv(&self) -> CliResult<String> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::validation(format!("csv output: {e}"));
        writer.write_record(&self.columns).map_err(fail)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::csv_field)).map_err(fail)?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::validation(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    /// Array of objects keyed by column name, in column order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let object: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, cell)| ((*c).to_owned(), cell.json_value()))
                        .collect();
                    Value::Object(object)
                })
                .collect(),
        )
    }
}
