//! Rendering of records and tables as JSON or CSV.
//!
//! Every floating-point number passes through [`round_sig`] so output is
//! stable at the requested number of significant digits.

use crate::error::CliError;
use serde::Serialize;
use serde_json::{Map, Value};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Where and how results are written.
pub struct Sink {
    pub format: Option<Format>,
    pub precision: usize,
    pub path: Option<PathBuf>,
}

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

/// Plain decimal for moderate magnitudes, exponent form otherwise.
pub fn fmt_num(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    let a = r.abs();
    if r == 0.0 || (1e-4..1e15).contains(&a) || !r.is_finite() {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn round_value(v: Value, digits: usize) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round_sig(x, digits)).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round_value(x, digits)).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, x)| (k, round_value(x, digits))).collect()),
        other => other,
    }
}

fn scalar_text(v: &Value, digits: usize) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => fmt_num(n.as_f64().unwrap_or(f64::NAN), digits),
        other => other.to_string(),
    }
}

/// Flattens nested objects into dotted keys; arrays stay compact JSON.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

impl Sink {
    fn writer(&self) -> Result<Box<dyn Write>, CliError> {
        Ok(match &self.path {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn to_value<T: Serialize>(&self, x: &T) -> Result<Value, CliError> {
        Ok(round_value(serde_json::to_value(x)?, self.precision))
    }

    /// Writes a single result. JSON by default; CSV gives `field,value` rows.
    pub fn record<T: Serialize>(&self, x: &T) -> Result<(), CliError> {
        let v = self.to_value(x)?;
        let mut w = self.writer()?;
        match self.format.unwrap_or(Format::Json) {
            Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&v)?)?,
            Format::Csv => {
                let mut flat = Vec::new();
                flatten("", &v, &mut flat);
                let mut c = csv::Writer::from_writer(&mut w);
                c.write_record(["field", "value"])?;
                for (k, x) in flat {
                    c.write_record([k, scalar_text(&x, self.precision)])?;
                }
                c.flush()?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Writes rows of a sweep. CSV by default, with `summary` (if any) as a
    /// trailing `# key=value, ...` comment line. JSON gives
    /// `{"rows": [...], "summary": {...}}`.
    pub fn table<T: Serialize, S: Serialize>(&self, rows: &[T], summary: Option<&S>) -> Result<(), CliError> {
        let mut w = self.writer()?;
        match self.format.unwrap_or(Format::Csv) {
            Format::Json => {
                let mut m = Map::new();
                m.insert("rows".into(), self.to_value(&rows)?);
                if let Some(s) = summary {
                    m.insert("summary".into(), self.to_value(s)?);
                }
                writeln!(w, "{}", serde_json::to_string_pretty(&Value::Object(m))?)?;
            }
            Format::Csv => {
                let mut c = csv::Writer::from_writer(&mut w);
                let mut header = false;
                for row in rows {
                    let mut flat = Vec::new();
                    flatten("", &self.to_value(row)?, &mut flat);
                    if !header {
                        c.write_record(flat.iter().map(|(k, _)| k.as_str()))?;
                        header = true;
                    }
                    c.write_record(flat.iter().map(|(_, x)| scalar_text(x, self.precision)))?;
                }
                c.flush()?;
                drop(c);
                if let Some(s) = summary {
                    let mut flat = Vec::new();
                    flatten("", &self.to_value(s)?, &mut flat);
                    let parts: Vec<String> =
                        flat.iter().map(|(k, x)| format!("{k}={}", scalar_text(x, self.precision))).collect();
                    writeln!(w, "# {}", parts.join(", "))?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(round_sig(0.60774321, 6), 0.607743);
        assert_eq!(round_sig(123456789.0, 3), 123000000.0);
        assert_eq!(round_sig(0.0, 6), 0.0);
        assert_eq!(fmt_num(10.193456, 4), "10.19");
        assert_eq!(fmt_num(1.23456e-7, 3), "1.23e-7");
        assert_eq!(fmt_num(-2.5, 6), "-2.5");
    }

    #[test]
    fn rounding_reaches_nested_numbers() {
        let v = serde_json::json!({"a": [1.234567, {"b": 9.87654321}], "n": 3});
        let r = round_value(v, 3);
        assert_eq!(r, serde_json::json!({"a": [1.23, {"b": 9.88}], "n": 3}));
    }

    #[test]
    fn flattening_uses_dotted_keys() {
        let v = serde_json::json!({"a": {"b": 1, "c": [1, 2]}, "d": "x"});
        let mut out = Vec::new();
        flatten("", &v, &mut out);
        let keys: Vec<_> = out.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["a.b", "a.c", "d"]);
    }
}
