//! Machine-readable result records.
//!
//! The JSON schema has a fixed key order so golden outputs are
//! byte-stable: command, input, separable | exists | verified,
//! certificate, witnesses, bound_used, diagnostics, version.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exists: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    pub certificate: Option<String>,
    pub witnesses: Value,
    pub bound_used: Option<Value>,
    pub diagnostics: String,
    pub version: &'static str,
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

impl ResultRecord {
    pub fn new(command: &str, input: &str) -> Self {
        ResultRecord {
            command: command.to_string(),
            input: input.to_string(),
            separable: None,
            exists: None,
            verified: None,
            certificate: None,
            witnesses: Value::Null,
            bound_used: None,
            diagnostics: String::new(),
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Plain-text form for interactive use.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(s) = self.separable {
            out.push_str(if s { "separable: yes\n" } else { "separable: no\n" });
        }
        if let Some(e) = self.exists {
            out.push_str(if e { "exists: yes\n" } else { "exists: no\n" });
        }
        if let Some(v) = self.verified {
            out.push_str(if v { "verified: yes\n" } else { "verified: no\n" });
        }
        if let Some(c) = &self.certificate {
            out.push_str(&format!("certificate: {}\n", c));
        }
        if !self.witnesses.is_null() {
            out.push_str(&format!("witnesses: {}\n", self.witnesses));
        }
        if let Some(b) = &self.bound_used {
            out.push_str(&format!("bound_used: {}\n", b));
        }
        if !self.diagnostics.is_empty() {
            out.push_str(&format!("diagnostics: {}\n", self.diagnostics));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_is_stable() {
        let mut r = ResultRecord::new("sep-rational", "1/(t*x)");
        r.separable = Some(true);
        r.certificate = Some("(t+1)*S - t".into());
        let j = r.to_json();
        let ci = j.find("\"command\"").unwrap();
        let ii = j.find("\"input\"").unwrap();
        let si = j.find("\"separable\"").unwrap();
        let ce = j.find("\"certificate\"").unwrap();
        let vi = j.find("\"version\"").unwrap();
        assert!(ci < ii && ii < si && si < ce && ce < vi, "{}", j);
        assert!(!j.contains("exists"));
        // two runs serialize to the same bytes
        assert_eq!(j, r.to_json());
    }
}
