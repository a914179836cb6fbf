use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::ratmap::BirationalReport;

pub const FORMAT_NAME: &str = "birat-report";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Jsonl,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateLine {
    pub label: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Output of one subcommand: ordered named values followed by certificates.
/// The run succeeds iff every certificate holds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub values: Vec<(String, Value)>,
    pub certificates: Vec<CertificateLine>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.push((key.to_string(), v.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn certificate(&mut self, label: &str, holds: bool, detail: Option<String>) -> &mut Self {
        self.certificates.push(CertificateLine {
            label: label.to_string(),
            holds,
            detail,
        });
        self
    }

    /// One line per divisibility check, prefixed by `prefix`.
    pub fn birational(&mut self, prefix: &str, r: &BirationalReport) -> &mut Self {
        self.certificate(&format!("{prefix}forward restricts"), r.forward_restricts, None);
        self.certificate(&format!("{prefix}inverse restricts"), r.inverse_restricts, None);
        for f in &r.failures {
            self.certificate(&format!("{prefix}round trip"), false, Some(f.clone()));
        }
        for c in &r.certificates {
            let detail = (!c.holds).then(|| format!("residual {}", c.residual));
            self.certificate(&format!("{prefix}{}", c.label), c.holds, detail);
        }
        self
    }

    pub fn all_hold(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Jsonl => self.render_jsonl(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}", self.command);
        for (k, v) in &self.values {
            match v {
                Value::Array(items) => {
                    let _ = writeln!(s, "{k}:");
                    for item in items {
                        let _ = writeln!(s, "  {}", plain(item));
                    }
                }
                v => {
                    let _ = writeln!(s, "{k}: {}", plain(v));
                }
            }
        }
        for c in &self.certificates {
            let mark = if c.holds { "ok" } else { "FAILED" };
            match &c.detail {
                Some(d) => {
                    let _ = writeln!(s, "certificate {}: {mark} ({d})", c.label);
                }
                None => {
                    let _ = writeln!(s, "certificate {}: {mark}", c.label);
                }
            }
        }
        let _ = writeln!(s, "status: {}", if self.all_hold() { "certified" } else { "not certified" });
        s
    }

    fn render_jsonl(&self) -> String {
        let mut lines = vec![json!({
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "command": self.command,
        })];
        lines.extend(
            self.values
                .iter()
                .map(|(k, v)| json!({"kind": "value", "key": k, "value": v})),
        );
        lines.extend(self.certificates.iter().map(|c| {
            let mut v = json!({"kind": "certificate", "label": c.label, "holds": c.holds});
            if let Some(d) = &c.detail {
                v["detail"] = json!(d);
            }
            v
        }));
        lines.push(json!({"kind": "status", "certified": self.all_hold()}));
        lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_header_and_status() {
        let mut r = Report::new("demo");
        r.value("count", 3).certificate("c", true, None);
        let out = r.render(OutputFormat::Jsonl);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines[0]["format"], "birat-report");
        assert_eq!(lines[0]["version"], 1);
        assert_eq!(lines.last().unwrap()["certified"], true);
        assert!(r.render(OutputFormat::Text).contains("certificate c: ok"));
    }
}
