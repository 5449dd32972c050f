//! Machine-readable run reports. Field order and map ordering are fixed,
//! so the same input always serializes to the same bytes. Numeric values
//! inside `result` are strings; only flags are native booleans.

use crate::error::CliError;
use monodromy_core::NumberField;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    /// Hex SHA-256 of the raw input bytes (for `corpus`: of the selector
    /// string, empty-string digest when the whole corpus runs).
    pub input_digest: String,
    pub result: Value,
    pub warnings: Vec<String>,
    pub claims: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION.into(),
            command: command.into(),
            input_digest: digest_hex(input),
            result: Value::Null,
            warnings: Vec::new(),
            claims: Vec::new(),
        }
    }

    /// A structured failure payload; written to the normal output stream
    /// so callers always receive a well-formed report.
    pub fn failure(command: &str, input: &[u8], error: &CliError) -> Report {
        let mut report = Report::new(command, input);
        report.result = serde_json::json!({
            "status": "error",
            "error": error.to_string(),
        });
        report
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Stable line-oriented rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input_digest: {}\n", self.input_digest));
        out.push_str("result:\n");
        render_value(&mut out, &self.result, 1);
        render_list(&mut out, "warnings", &self.warnings);
        render_list(&mut out, "claims", &self.claims);
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

pub fn digest_hex(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(64);
    for byte in Sha256::digest(bytes) {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Stable textual name for a coefficient field.
pub fn field_label(field: NumberField) -> String {
    match field {
        NumberField::Rationals => "rationals".into(),
        NumberField::Quadratic { d } => format!("quadratic({d})"),
        NumberField::Cyclotomic { n } => format!("cyclotomic({n})"),
    }
}

fn render_list(out: &mut String, name: &str, items: &[String]) {
    if items.is_empty() {
        out.push_str(&format!("{name}: (none)\n"));
        return;
    }
    out.push_str(&format!("{name}:\n"));
    for item in items {
        out.push_str(&format!("  - {item}\n"));
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.is_empty() => "[]".into(),
        Value::Object(m) if m.is_empty() => "{}".into(),
        _ => unreachable!("nested values are rendered structurally"),
    }
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (key, val) in map {
                match val {
                    Value::Object(m) if !m.is_empty() => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(out, val, indent + 1);
                    }
                    Value::Array(a) if !a.is_empty() => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(out, val, indent + 1);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for item in items {
                match item {
                    Value::Object(m) if !m.is_empty() => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(out, item, indent + 1);
                    }
                    Value::Array(a) if !a.is_empty() => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(out, item, indent + 1);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_matches_known_vector() {
        // SHA-256 of the empty string.
        assert_eq!(
            digest_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn json_rendering_is_deterministic_and_sorted() {
        let mut report = Report::new("classify", b"payload");
        report.result = serde_json::json!({"zeta": "1", "alpha": {"b": true, "a": "2"}});
        let one = report.to_json();
        let two = report.to_json();
        assert_eq!(one, two);
        // Map keys serialize sorted regardless of insertion order.
        let alpha = one.find("\"alpha\"").unwrap();
        let zeta = one.find("\"zeta\"").unwrap();
        assert!(alpha < zeta);
        assert!(one.ends_with('\n'));
    }

    #[test]
    fn text_rendering_walks_nested_values() {
        let mut report = Report::new("kodaira", b"x");
        report.result = serde_json::json!({
            "punctures": [
                {"kodaira_type": "II", "order": "6"},
                {"kodaira_type": "I*(0)", "order": "2"}
            ],
            "relation_holds": true,
            "empty": [],
        });
        report.claims.push("stable claim".into());
        let text = report.to_text();
        let expected = "command: kodaira\n\
                        input_digest: 2d711642b726b04401627ca9fbac32f5c8530fb1903cc4db02258717921a4881\n\
                        result:\n\
                        \x20 empty: []\n\
                        \x20 punctures:\n\
                        \x20   -\n\
                        \x20     kodaira_type: II\n\
                        \x20     order: 6\n\
                        \x20   -\n\
                        \x20     kodaira_type: I*(0)\n\
                        \x20     order: 2\n\
                        \x20 relation_holds: true\n\
                        warnings: (none)\n\
                        claims:\n\
                        \x20 - stable claim\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn failure_reports_carry_the_message() {
        let err = CliError::parse("$.kind", "unknown kind");
        let report = Report::failure("classify", b"{}", &err);
        assert_eq!(report.result["status"], "error");
        assert!(report.result["error"].as_str().unwrap().contains("$.kind"));
    }

    #[test]
    fn field_labels_are_stable() {
        assert_eq!(field_label(NumberField::Rationals), "rationals");
        assert_eq!(field_label(NumberField::quadratic(-3).unwrap()), "quadratic(-3)");
        assert_eq!(field_label(NumberField::cyclotomic(12).unwrap()), "cyclotomic(12)");
    }
}
