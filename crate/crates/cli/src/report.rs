use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "completion-lab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "CONFIRMED")]
    Confirmed,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    #[serde(rename = "N/A")]
    NotApplicable,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::NotApplicable => "N/A",
        }
    }

    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Verdict::Confirmed
        } else {
            Verdict::Mismatch
        }
    }
}

/// One checked statement with the evidence behind its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub claim: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Claim {
    pub fn new(id: impl Into<String>, claim: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Claim { id: id.into(), claim: claim.into(), verdict, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub results: Value,
    pub verdicts: Vec<Claim>,
}

impl Report {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.verdicts.iter().find(|c| c.id == id)
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), Value::String(SCHEMA.into()));
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("input".into(), self.input.clone());
        m.insert("results".into(), self.results.clone());
        m.insert("verdicts".into(), serde_json::to_value(&self.verdicts).expect("claims serialize"));
        stringify_integers(Value::Object(m))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{SCHEMA} {}", self.command);
        let v = self.to_value();
        for key in ["input", "results"] {
            let _ = writeln!(out, "{key}:");
            render(&v[key], 1, &mut out);
        }
        let _ = writeln!(out, "verdicts:");
        for c in &self.verdicts {
            let _ = writeln!(out, "  {:<12} {:<24} {}", c.verdict.label(), c.id, c.claim);
            if !c.detail.is_empty() {
                let _ = writeln!(out, "  {:<12} {:<24} {}", "", "", c.detail);
            }
        }
        out
    }
}

/// Replaces every JSON number by its decimal string.
pub fn stringify_integers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_integers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, stringify_integers(v))).collect()),
        other => other,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
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
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
