//! Machine-readable command output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A valid negative answer: the hypotheses of a certificate do not hold.
    HypothesesNotMet,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::HypothesesNotMet => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub input: BTreeMap<String, String>,
    pub result: Value,
    pub warnings: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn error(command: &str, input: BTreeMap<String, String>, warnings: Vec<String>, e: &Error) -> Report {
        let status = match e {
            Error::HypothesesNotMet(_) => Status::HypothesesNotMet,
            _ => Status::Error,
        };
        Report {
            command: command.to_string(),
            input,
            result: serde_json::json!({ "error": e.code(), "message": e.to_string() }),
            warnings,
            status,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report: {e}")))
    }

    /// Indented `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "status: {}", serde_json::to_value(self.status).expect("status").as_str().expect("string"));
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        text_value(&mut out, &self.result, 0);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_value(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}- #{i}");
                        text_value(out, x, indent + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_codes() {
        let mut input = BTreeMap::new();
        input.insert("map".to_string(), "z^2".to_string());
        let r = Report {
            command: "classify".into(),
            input,
            result: serde_json::json!({ "b": [1, 2], "a": { "x": "1/2" } }),
            warnings: vec!["w".into()],
            status: Status::HypothesesNotMet,
        };
        let s = r.to_json();
        assert_eq!(Report::from_json(&s).unwrap(), r);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert_eq!(r.exit_code(), 2);
        assert!(r.to_text().contains("status: hypotheses_not_met"));
        assert!(Report::from_json("{\"command\": 1}").is_err());
    }
}
