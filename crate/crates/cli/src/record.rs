//! Machine-readable experiment records.
//!
//! Every run emits one record: the request echo, library version, timestamp,
//! tolerances, numeric results, and verdicts. JSON is the primary encoding;
//! CSV flattens the same fields into one table (array fields become columns,
//! scalars become constant columns), so the two encodings agree field by
//! field. Non-finite numbers serialize as the strings `"inf"`, `"-inf"`,
//! `"nan"` in both encodings so nothing is lost in transit.

use serde::Serialize;
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct RequestEcho {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub output: String,
}

#[derive(Debug, Serialize)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivision_depth: u32,
}

/// One run's payload before serialization.
#[derive(Debug)]
pub struct CommandOutput {
    /// Scalar result fields (numbers, strings, booleans).
    pub scalars: Vec<(String, Value)>,
    /// Aligned array fields; all arrays must share one length.
    pub arrays: Vec<(String, Vec<Value>)>,
    /// Lowercase verdict strings.
    pub verdicts: BTreeMap<String, String>,
    pub exit_code: i32,
}

impl CommandOutput {
    pub fn new() -> Self {
        CommandOutput {
            scalars: Vec::new(),
            arrays: Vec::new(),
            verdicts: BTreeMap::new(),
            exit_code: 0,
        }
    }

    pub fn scalar(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.scalars.push((key.to_string(), value.into()));
        self
    }

    pub fn number(&mut self, key: &str, value: f64) -> &mut Self {
        self.scalars.push((key.to_string(), json_number(value)));
        self
    }

    pub fn numbers(&mut self, key: &str, values: &[f64]) -> &mut Self {
        self.arrays
            .push((key.to_string(), values.iter().map(|&v| json_number(v)).collect()));
        self
    }

    pub fn verdict(&mut self, key: &str, value: &str) -> &mut Self {
        self.verdicts.insert(key.to_string(), value.to_string());
        self
    }
}

/// Finite numbers stay numbers; the rest become unambiguous strings.
pub fn json_number(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
    } else if x.is_nan() {
        Value::String("nan".into())
    } else if x > 0.0 {
        Value::String("inf".into())
    } else {
        Value::String("-inf".into())
    }
}

pub struct Record {
    pub request: RequestEcho,
    pub tolerances: Tolerances,
    pub output: CommandOutput,
}

impl Record {
    pub fn to_json(&self) -> Value {
        let mut results = Map::new();
        for (k, v) in &self.output.scalars {
            results.insert(k.clone(), v.clone());
        }
        for (k, vs) in &self.output.arrays {
            results.insert(k.clone(), Value::Array(vs.clone()));
        }
        serde_json::json!({
            "request": serde_json::to_value(&self.request).unwrap(),
            "library_version": env!("CARGO_PKG_VERSION"),
            "timestamp_unix": SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            "tolerances": serde_json::to_value(&self.tolerances).unwrap(),
            "results": Value::Object(results),
            "verdicts": serde_json::to_value(&self.output.verdicts).unwrap(),
        })
    }

    /// One flat table: array fields are columns, scalar and verdict fields
    /// repeat as constant columns.
    pub fn write_csv<W: Write>(&self, w: W) -> anyhow::Result<()> {
        let mut writer = csv::Writer::from_writer(w);
        let n_rows = self.output.arrays.first().map(|(_, v)| v.len()).unwrap_or(1).max(1);
        let mut header: Vec<String> = Vec::new();
        for (k, _) in &self.output.arrays {
            header.push(k.clone());
        }
        for (k, _) in &self.output.scalars {
            header.push(k.clone());
        }
        for k in self.output.verdicts.keys() {
            header.push(k.clone());
        }
        writer.write_record(&header)?;
        for row in 0..n_rows {
            let mut cells: Vec<String> = Vec::new();
            for (_, vs) in &self.output.arrays {
                cells.push(value_to_cell(vs.get(row).unwrap_or(&Value::Null)));
            }
            for (_, v) in &self.output.scalars {
                cells.push(value_to_cell(v));
            }
            for v in self.output.verdicts.values() {
                cells.push(v.clone());
            }
            writer.write_record(&cells)?;
        }
        writer.flush()?;
        Ok(())
    }
}

fn value_to_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => {
            // ryu shortest round-trip, matching serde_json's number rendering
            let mut buf = Vec::new();
            serde_json::to_writer(&mut buf, n).unwrap();
            String::from_utf8(buf).unwrap()
        }
        other => other.to_string(),
    }
}
