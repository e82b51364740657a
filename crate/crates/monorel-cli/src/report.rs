//! Report assembly and rendering.
//!
//! Every command produces one JSON object that always starts with the
//! library version, the command name, and the rank tolerance actually used;
//! `--format json` prints it pretty-printed, `--format text` renders the
//! same object as indented `key: value` lines. Numbers keep full precision
//! in both formats.

use monorel::analysis::{Certificate, Verdict};
use nalgebra::{DMatrix, DVector};
use serde_json::{Map, Value};

/// Starts a report with the three fields every report carries.
pub fn header(command: &str, tol: f64) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("version".into(), Value::String(monorel::VERSION.into()));
    map.insert("command".into(), Value::String(command.into()));
    map.insert("tol".into(), number(tol));
    map
}

/// A finite `f64` as a JSON number.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .expect("report values are finite")
}

/// A vector as a JSON array of numbers.
pub fn vector(v: &DVector<f64>) -> Value {
    Value::Array(v.iter().map(|&x| number(x)).collect())
}

/// A matrix as a JSON array of rows.
pub fn matrix(m: &DMatrix<f64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array(m.row(i).iter().map(|&x| number(x)).collect()))
            .collect(),
    )
}

/// A verdict as JSON: `true`, `false`, or the string `"inconclusive"`.
pub fn verdict(v: Verdict) -> Value {
    match v {
        Verdict::True => Value::Bool(true),
        Verdict::False => Value::Bool(false),
        Verdict::Inconclusive => Value::String("inconclusive".into()),
    }
}

/// A certificate as `{verdict, detail[, witness]}`.
pub fn certificate(c: &Certificate) -> Value {
    let mut map = Map::new();
    map.insert("verdict".into(), verdict(c.verdict()));
    map.insert("detail".into(), Value::String(c.detail().into()));
    if let Some(w) = c.witness() {
        map.insert("witness".into(), vector(w));
    }
    Value::Object(map)
}

/// Renders a report object as indented `key: value` text.
///
/// Scalars and flat arrays stay on the key's line; arrays of arrays print
/// one row per line; nested objects indent their fields by two spaces.
pub fn render_text(report: &Map<String, Value>) -> String {
    let mut out = String::new();
    render_object(report, 0, &mut out);
    out
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    for (key, value) in map {
        render_entry(key, value, indent, out);
    }
}

fn render_entry(key: &str, value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(inner) => {
            out.push_str(&format!("{pad}{key}:\n"));
            render_object(inner, indent + 1, out);
        }
        Value::Array(items) if items.iter().any(Value::is_array) => {
            out.push_str(&format!("{pad}{key}:\n"));
            let row_pad = "  ".repeat(indent + 1);
            for item in items {
                out.push_str(&format!("{row_pad}{item}\n"));
            }
        }
        Value::String(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
        other => out.push_str(&format!("{pad}{key}: {other}\n")),
    }
}
