//! The JSON report every subcommand emits, and its plain-text rendering.

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PreconditionError,
    InternalFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::PreconditionError => 2,
            Status::InternalFailure => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub arguments: Map<String, Value>,
    /// SHA-256 of the input files in argument order, or of the arguments
    /// when the command reads no file.
    pub input_sha256: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock milliseconds; only with `--timing`, which breaks
    /// byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn input_hash(files: &[Vec<u8>], arguments: &Map<String, Value>) -> String {
    let mut h = Sha256::new();
    if files.is_empty() {
        h.update(Value::Object(arguments.clone()).to_string().as_bytes());
    }
    for f in files {
        h.update(f);
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qpencil {}: {}\n", self.command, status_word(self.status));
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        if let Some(p) = &self.payload {
            render(p, 0, &mut out);
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("time: {t} ms\n"));
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::PreconditionError => "precondition error",
        Status::InternalFailure => "INTERNAL CONSISTENCY FAILURE",
    }
}

/// Arrays of scalars print inline while they fit on a line.
const INLINE_WIDTH: usize = 100;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let parts: Option<Vec<String>> = a.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", "))).filter(|s| s.chars().count() <= INLINE_WIDTH)
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_nests() {
        let mut out = String::new();
        render(&json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": true}]}), 0, &mut out);
        assert_eq!(out, "a: 1\nb:\n  c: [1, 2]\nd:\n  -\n    e: true\n");
    }

    #[test]
    fn hash_covers_arguments_without_files() {
        let mut a = Map::new();
        a.insert("n".into(), json!(5));
        let mut b = a.clone();
        b.insert("n".into(), json!(4));
        assert_ne!(input_hash(&[], &a), input_hash(&[], &b));
        assert_eq!(input_hash(&[b"x".to_vec()], &a), input_hash(&[b"x".to_vec()], &b));
    }
}
