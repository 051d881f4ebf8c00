//! Deterministic run reports.
//!
//! Every command emits one JSON envelope: command name, echoed inputs, the
//! operation payload, a timing field, and the artifact version. Keys are
//! serialized in sorted order and every numeric value is an integer or an
//! exact "num/den" rational string, so two runs with the same inputs differ
//! at most in `timing_ms`. CSV output is a flat projection of the payload
//! for spreadsheet-style diffing.

use num_rational::BigRational;
use serde_json::Value;

use crate::linalg::rational_str;

/// The envelope printed by every JSON-mode command.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub timing_ms: u64,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, outputs: Value, timing_ms: u64) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            outputs,
            timing_ms,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "timing_ms": self.timing_ms,
            "version": self.version,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Exact rational as a JSON value: always the "num/den" string form.
pub fn rational_value(r: &BigRational) -> Value {
    Value::String(rational_str(r))
}

/// A header plus rows, rendered as comma-separated values. Fields containing
/// a comma, quote, or newline are quoted with doubled inner quotes.
#[derive(Debug, Clone)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: Vec<S>) -> Self {
        CsvTable {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row<S: Into<String>>(&mut self, row: Vec<S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.header.len(), "row width matches header");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(self.rows.iter()) {
            let encoded: Vec<String> = line.iter().map(|f| escape_csv(f)).collect();
            out.push_str(&encoded.join(","));
            out.push('\n');
        }
        out
    }
}

fn escape_csv(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use serde_json::json;

    #[test]
    fn envelope_serializes_with_sorted_keys() {
        let report = RunReport::new(
            "hn",
            json!({"p": 7, "d": 5}),
            json!({"alpha": 5, "zeta": 1}),
            12,
        );
        let rendered = report.render();
        let cmd = rendered.find("\"command\"").unwrap();
        let inputs = rendered.find("\"inputs\"").unwrap();
        let outputs = rendered.find("\"outputs\"").unwrap();
        let timing = rendered.find("\"timing_ms\"").unwrap();
        let version = rendered.find("\"version\"").unwrap();
        assert!(cmd < inputs && inputs < outputs && outputs < timing && timing < version);
        // nested keys are sorted too
        assert!(rendered.find("\"d\"").unwrap() < rendered.find("\"p\"").unwrap());
        assert!(rendered.ends_with('\n'));
    }

    #[test]
    fn identical_reports_render_identically() {
        let make = || {
            RunReport::new(
                "hk",
                json!({"d": 5}),
                json!({"ratio": rational_value(&rat(65, 4))}),
                99,
            )
            .render()
        };
        assert_eq!(make(), make());
    }

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational_value(&rat(65, 4)), json!("65/4"));
        assert_eq!(rational_value(&rat(-10, 2)), json!("-5/1"));
        assert_eq!(rational_value(&rat(0, 9)), json!("0/1"));
    }

    #[test]
    fn csv_renders_and_escapes() {
        let mut t = CsvTable::new(vec!["a", "b"]);
        t.push_row(vec!["1", "x,y"]);
        t.push_row(vec!["say \"hi\"", "plain"]);
        assert_eq!(
            t.render(),
            "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",plain\n"
        );
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn csv_rejects_ragged_rows() {
        let mut t = CsvTable::new(vec!["a", "b"]);
        t.push_row(vec!["only-one"]);
    }
}
