use std::io::Write;
use std::path::Path;

use momlat_core::report::{fmt_real, round15};
use momlat_core::{Complex64, GridFunction};
use serde_json::{json, Value};

use crate::args::OutputArgs;
use crate::CliError;

/// Writes `text` to `--out` or standard output.
pub fn emit(output: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// A real as a JSON number with 15 significant digits; null if not finite.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(round15(v))
    } else {
        Value::Null
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn grid_rows(f: &GridFunction) -> Value {
    let rows: Vec<Value> = f
        .lattice()
        .momenta()
        .zip(f.values())
        .enumerate()
        .map(|(j, (p, v))| json!({ "j": j, "p": num(p), "re": num(v.re), "im": num(v.im) }))
        .collect();
    Value::Array(rows)
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

/// Joins already-formatted cells into one CSV line.
pub fn csv_line(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

pub fn real(v: f64) -> String {
    fmt_real(v)
}
