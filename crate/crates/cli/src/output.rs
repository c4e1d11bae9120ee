//! Output formats, exit codes and small rendering helpers.

use clap::ValueEnum;
use serde_json::{json, Value};

pub const OK: u8 = 0;
pub const USAGE: u8 = 1;
pub const REFUSAL: u8 = 2;
pub const VERIFICATION: u8 = 3;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A successful (or verification-failed) run: what to print and how to exit.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { stdout, code: OK }
    }

    /// Exit 0 when `passed`, otherwise 3.
    pub fn verdict(stdout: String, passed: bool) -> Self {
        Outcome { stdout, code: if passed { OK } else { VERIFICATION } }
    }
}

/// A run that stopped early; `message` goes to stderr, `stdout` (if any)
/// to stdout.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub stdout: Option<String>,
}

impl Failure {
    pub fn usage(message: impl ToString) -> Self {
        Failure { code: USAGE, message: message.to_string(), stdout: None }
    }

    /// A failure with a machine-readable body when the format is JSON.
    pub fn with_body(code: u8, kind: &str, message: String, format: Format, extra: Option<Value>) -> Self {
        let stdout = match format {
            Format::Json => {
                let mut err = json!({ "kind": kind, "message": message, "exit_code": code });
                if let Some(Value::Object(map)) = extra.clone() {
                    err.as_object_mut().expect("object").extend(map);
                }
                Some(to_json(&json!({ "error": err })))
            }
            Format::Text => extra.map(|v| text_lines(&v)),
            Format::Csv => None,
        };
        Failure { code, message, stdout }
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// `key: value` lines for the top-level entries of a JSON object.
pub fn text_lines(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::Object(inner) => {
                    for (k2, y) in inner {
                        out.push_str(&format!("{k}.{k2}: {}\n", scalar(y)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", scalar(x))),
            }
        }
    }
    out
}

/// A JSON scalar without quotes; other values in compact JSON.
pub fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Floats at 17 significant digits, matching the JSON serialization.
pub fn f64_text(x: f64) -> String {
    if x.is_finite() {
        // `+ 0.0` folds negative zero into zero; the explicit exponent sign
        // matches the JSON serialization
        let s = format!("{:.16e}", x + 0.0);
        match s.split_once('e') {
            Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
            _ => s,
        }
    } else {
        "-".into()
    }
}

/// A JSON number carrying 17 significant digits.
pub fn f64_json(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(f64_text(x).parse().expect("formatted floats parse as JSON numbers"))
}

/// Writes rows of strings as CSV.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory CSV");
    for r in rows {
        w.write_record(&r).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
}
