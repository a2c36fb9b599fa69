//! The JSON run manifest and its plain-text rendering. Both modes print the
//! same values: the table is a flattening of the JSON report.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "hikita-report/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: String,
    pub tool_version: String,
    pub verb: String,
    /// Arguments after the program name, enough to rerun the command.
    pub input: Vec<String>,
    pub seed: u64,
    pub wall_time_ms: f64,
    pub verdicts: Value,
}

impl RunManifest {
    pub fn new(verb: &str, input: &[String], seed: u64, wall_time_ms: f64, verdicts: Value) -> RunManifest {
        RunManifest {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            verb: verb.into(),
            input: input.to_vec(),
            seed,
            wall_time_ms,
            verdicts,
        }
    }
}

/// `key: value` lines, nested keys joined by dots and arrays of scalars
/// written inline.
pub fn table(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    lines.join("\n")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) => {
            let scalars: Option<Vec<String>> = items.iter().map(scalar).collect();
            match scalars {
                Some(s) => out.push(format!("{prefix}: [{}]", s.join(", "))),
                None => {
                    for (i, x) in items.iter().enumerate() {
                        flatten(&key(&i.to_string()), x, out);
                    }
                }
            }
        }
        _ => out.push(format!("{prefix}: {}", scalar(v).unwrap_or_default())),
    }
}
