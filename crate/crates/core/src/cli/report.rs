//! Run reports: canonical JSON (sorted keys, floats rounded to 12 significant
//! digits) or flat `key,value` CSV.

use std::collections::BTreeMap;

use serde_json::{Map, Number, Value};

pub const FLOAT_DIGITS: usize = 12;

/// JSON value for a float, rounded to [`FLOAT_DIGITS`] significant digits.
/// Non-finite values become the strings `"inf"`, `"-inf"` and `"nan"`.
pub fn num(x: f64) -> Value {
    if x.is_nan() {
        return Value::String("nan".into());
    }
    if x.is_infinite() {
        return Value::String(if x > 0.0 { "inf" } else { "-inf" }.into());
    }
    let rounded: f64 = format!("{:.*e}", FLOAT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    // Avoid "-0.0" in the output.
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: Vec<String>,
    /// Input path -> SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub seed: u64,
    pub elapsed_ms: Option<f64>,
}

impl RunReport {
    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert(
            "command".into(),
            Value::Array(self.command.iter().cloned().map(Value::String).collect()),
        );
        top.insert(
            "inputs".into(),
            Value::Object(
                self.inputs
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect(),
            ),
        );
        top.insert("results".into(), self.results.clone());
        top.insert("seed".into(), Value::from(self.seed));
        let mut versions = Map::new();
        versions.insert("matchbound".into(), Value::from(env!("CARGO_PKG_VERSION")));
        top.insert("versions".into(), Value::Object(versions));
        if let Some(ms) = self.elapsed_ms {
            top.insert("elapsed_ms".into(), num(ms));
        }
        Value::Object(top)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("value serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut rows = Vec::new();
                flatten("", &self.to_value(), &mut rows);
                let mut s = String::from("key,value\n");
                for (k, v) in rows {
                    s.push_str(&csv_field(&k));
                    s.push(',');
                    s.push_str(&csv_field(&v));
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
