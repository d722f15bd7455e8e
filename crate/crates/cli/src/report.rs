use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Result of one command. Object keys are kept sorted, so rendering is
/// deterministic.
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub payload: Map<String, Value>,
    /// Printed verbatim instead of the key-value text when set.
    pub raw_text: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            pass: true,
            payload: Map::new(),
            raw_text: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.payload.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "pass": self.pass,
            "payload": Value::Object(self.payload.clone()),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        if let Some(raw) = &self.raw_text {
            return raw.clone();
        }
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "status: {}", if self.pass { "pass" } else { "fail" });
        for (k, v) in &self.payload {
            write_value(&mut s, k, v, 0);
        }
        s
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(t) => Some(t.clone()),
        _ => None,
    }
}

fn write_value(s: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(x) = scalar(v) {
        let _ = writeln!(s, "{pad}{key}: {x}");
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            let _ = writeln!(s, "{pad}{key}: [{}]", parts.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(s, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                write_value(s, &format!("[{i}]"), item, depth + 1);
            }
        }
        Value::Object(m) => {
            let _ = writeln!(s, "{pad}{key}:");
            for (k, x) in m {
                write_value(s, k, x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
