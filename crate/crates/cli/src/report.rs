//! Command results and their two renderings.

use serde_json::{json, Map, Value};

/// Exit status 1: a domain error, named by its error type and variant.
/// Exit status 2: malformed input.
#[derive(Debug)]
pub enum Failure {
    Domain { name: String, message: String },
    Parse(String),
}

impl Failure {
    pub fn status(&self) -> i32 {
        match self {
            Failure::Domain { .. } => 1,
            Failure::Parse(_) => 2,
        }
    }

    /// `Type::Variant` from the `Debug` form of an error enum.
    pub fn domain<E: std::fmt::Debug + std::fmt::Display>(type_name: &str, e: E) -> Self {
        let dbg = format!("{e:?}");
        let variant: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
        Failure::Domain {
            name: format!("{type_name}::{variant}"),
            message: e.to_string(),
        }
    }
}

/// Ordered result fields. `raw`, when set, is printed as-is in human mode
/// and skipped in JSON mode, where the same data sits in `fields`.
#[derive(Debug, Default)]
pub struct Report {
    pub fields: Map<String, Value>,
    pub raw: Option<String>,
}

impl Report {
    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    pub fn render_human(&self) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            let v = human_value(v);
            let sep = if v.starts_with('\n') { "" } else { " " };
            out += &format!("{k}:{sep}{v}\n");
        }
        out
    }

    pub fn render_json(&self, command: &[String], elapsed_ms: u128) -> String {
        let doc = json!({
            "command": command,
            "status": 0,
            "result": self.fields,
            "elapsed_ms": elapsed_ms as u64,
        });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

fn indent(s: &str) -> String {
    s.trim_end().lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

fn human_value(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains('\n') => format!("\n{}", indent(s)),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array() && !x.as_str().is_some_and(|s| s.contains('\n'))) => {
            let parts: Vec<String> = a.iter().map(human_value).collect();
            if parts.iter().map(|p| p.len() + 2).sum::<usize>() <= 72 {
                parts.join(", ")
            } else {
                format!("\n{}", indent(&parts.join("\n")))
            }
        }
        Value::Array(a) => {
            let parts: Vec<String> = a
                .iter()
                .map(|x| match x {
                    Value::String(s) => indent(s),
                    other => indent(&other.to_string()),
                })
                .collect();
            format!("\n{}", parts.join("\n\n"))
        }
        other => other.to_string(),
    }
}

pub fn failure_json(command: &[String], f: &Failure) -> String {
    let (name, message) = match f {
        Failure::Domain { name, message } => (name.clone(), message.clone()),
        Failure::Parse(m) => ("ParseError".to_string(), m.clone()),
    };
    let doc = json!({
        "command": command,
        "status": f.status(),
        "error": { "name": name, "message": message },
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}
