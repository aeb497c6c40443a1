//! CSV and JSON report rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 7] = [
    "scenario",
    "case_id",
    "inputs_json",
    "measured",
    "bound",
    "pass",
    "wall_time_ms",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRecord {
    pub scenario: String,
    pub case_id: String,
    pub inputs: Map<String, Value>,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Config(format!("unknown report format `{other}`"))),
        }
    }
}

/// 17 significant digits; `null` for non-finite values.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

fn write_json_string(out: &mut String, s: &str) {
    out.push_str(&Value::String(s.to_string()).to_string());
}

/// JSON text with every float printed by [`format_float`] and object keys in sorted order.
pub fn json_value(out: &mut String, v: &Value) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_float(n.as_f64().expect("f64 number")));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => write_json_string(out, s),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                json_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json_string(out, k);
                out.push(':');
                json_value(out, item);
            }
            out.push('}');
        }
    }
}

pub fn inputs_json(inputs: &Map<String, Value>) -> String {
    let mut s = String::new();
    json_value(&mut s, &Value::Object(inputs.clone()));
    s
}

pub fn render_csv(records: &[ReportRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.scenario.as_str(),
            r.case_id.as_str(),
            &inputs_json(&r.inputs),
            &format_float(r.measured),
            &format_float(r.bound),
            if r.pass { "true" } else { "false" },
            &format_float(r.wall_time_ms),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_json(records: &[ReportRecord]) -> String {
    let mut out = String::from("[");
    for (i, r) in records.iter().enumerate() {
        out.push_str(if i == 0 { "\n  " } else { ",\n  " });
        out.push_str("{\"scenario\":");
        write_json_string(&mut out, &r.scenario);
        out.push_str(",\"case_id\":");
        write_json_string(&mut out, &r.case_id);
        out.push_str(",\"inputs_json\":");
        json_value(&mut out, &Value::Object(r.inputs.clone()));
        let _ = write!(
            out,
            ",\"measured\":{},\"bound\":{},\"pass\":{},\"wall_time_ms\":{}}}",
            format_float(r.measured),
            format_float(r.bound),
            r.pass,
            format_float(r.wall_time_ms)
        );
    }
    if !records.is_empty() {
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

pub fn render(records: &[ReportRecord], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => render_csv(records),
        ReportFormat::Json => Ok(render_json(records)),
    }
}

pub fn emit_report(records: &[ReportRecord], format: ReportFormat, path: &Path) -> Result<()> {
    fs::write(path, render(records, format)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn record() -> ReportRecord {
        let mut inputs = Map::new();
        inputs.insert("nu".into(), json!(0.5));
        inputs.insert("alpha".into(), json!(0.3));
        inputs.insert("n".into(), json!(3));
        inputs.insert("thetas".into(), json!([1.0, -0.25]));
        ReportRecord {
            scenario: "legendre_sinc".into(),
            case_id: "n1-000".into(),
            inputs,
            measured: 1.25e-9,
            bound: 1e-6,
            pass: true,
            wall_time_ms: 0.5,
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            render_csv(&[]).unwrap(),
            "scenario,case_id,inputs_json,measured,bound,pass,wall_time_ms\n"
        );
        assert_eq!(render_json(&[]), "[]\n");
    }

    #[test]
    fn single_row_schema() {
        let csv = render_csv(&[record()]).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        let row = rdr.records().next().unwrap().unwrap();
        assert_eq!(row.len(), 7);
        assert_eq!(&row[0], "legendre_sinc");
        let inputs: Value = serde_json::from_str(&row[2]).unwrap();
        assert_eq!(inputs["n"], json!(3));
        assert_eq!(row[3].parse::<f64>().unwrap(), 1.25e-9);
        assert_eq!(&row[5], "true");
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_parses_back() {
        let text = render_json(&[record(), record()]);
        let v: Value = serde_json::from_str(&text).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        for key in CSV_HEADER {
            assert!(arr[0].get(key).is_some(), "{key}");
        }
        assert_eq!(arr[0]["measured"].as_f64().unwrap(), 1.25e-9);
    }

    #[test]
    fn keys_sorted_and_floats_fixed() {
        let s = inputs_json(&record().inputs);
        assert!(s.starts_with("{\"alpha\":2.9999999999999999e-1"));
        assert_eq!(format_float(f64::NAN), "null");
    }
}
