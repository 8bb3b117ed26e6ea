use std::path::PathBuf;

use serde_json::Value;

use crate::config::{Context, Format};
use crate::CliError;

pub const SCHEMA: u64 = 1;

/// An additional CSV file: path, header, rows.
pub type ExtraCsv = (PathBuf, Vec<&'static str>, Vec<Vec<String>>);

/// Result of a subcommand, held in memory until everything has been computed.
pub struct Report {
    pub json: Value,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub extra: Vec<ExtraCsv>,
    pub pass: bool,
}

/// Rounds every float to 12 significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
            serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(m) => {
            Value::Object(m.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
        format!("{r}")
    } else {
        String::new()
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    for r in rows {
        w.write_record(r)
            .map_err(|e| CliError::Failed(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failed(e.to_string()))
}

pub fn emit(command: &str, report: Report, ctx: &Context) -> Result<bool, CliError> {
    let main = match ctx.format {
        Format::Json => {
            let mut obj = match round_floats(report.json) {
                Value::Object(m) => m,
                other => {
                    let mut m = serde_json::Map::new();
                    m.insert("result".into(), other);
                    m
                }
            };
            obj.insert("schema".into(), Value::from(SCHEMA));
            obj.insert("command".into(), Value::from(command));
            obj.insert("pass".into(), Value::from(report.pass));
            let mut s = serde_json::to_string_pretty(&Value::Object(obj))
                .map_err(|e| CliError::Failed(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => csv_string(&report.csv_header, &report.csv_rows)?,
    };
    let extras: Vec<(PathBuf, String)> = report
        .extra
        .iter()
        .map(|(p, h, r)| Ok((p.clone(), csv_string(h, r)?)))
        .collect::<Result<_, CliError>>()?;
    match &ctx.out {
        Some(path) => std::fs::write(path, main)
            .map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{main}"),
    }
    for (path, text) in extras {
        std::fs::write(&path, text)
            .map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report.pass)
}
