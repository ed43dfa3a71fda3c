//! Check reports and the JSON report document.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::scalar::{format_rational, Rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// One evaluated identity; `residual` is an exact nonnegative rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualEntry {
    pub indices: String,
    pub residual: Rational,
    /// First offending basis vector or matrix element, if any.
    pub witness: Option<String>,
}

impl ResidualEntry {
    pub fn new(indices: impl Into<String>, residual: Rational) -> Self {
        Self { indices: indices.into(), residual, witness: None }
    }

    pub fn with_witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub entries: Vec<ResidualEntry>,
    pub status: Status,
    /// Expected-failure control: it is healthy when it fails.
    pub control: bool,
    /// Extra reported quantities (numeric estimates, constants), already formatted.
    pub values: BTreeMap<String, String>,
}

impl CheckReport {
    /// PASS iff every residual is exactly zero.
    pub fn exact(name: impl Into<String>, params: BTreeMap<String, String>, entries: Vec<ResidualEntry>) -> Self {
        let status = if entries.iter().all(|e| e.residual.is_zero()) { Status::Pass } else { Status::Fail };
        Self { name: name.into(), params, entries, status, control: false, values: BTreeMap::new() }
    }

    pub fn as_control(mut self) -> Self {
        self.control = true;
        self
    }

    pub fn with_value(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.values.insert(key.into(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Healthy means PASS for ordinary checks and FAIL for controls.
    pub fn healthy(&self) -> bool {
        self.passed() != self.control
    }

    pub fn total_residual(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, e| acc + &e.residual)
    }

    pub fn offenders(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter().filter(|e| !e.residual.is_zero())
    }

    pub fn to_json(&self) -> Value {
        let offenders: Vec<Value> = self
            .offenders()
            .map(|e| {
                let mut m = serde_json::Map::new();
                m.insert("at".into(), json!(e.indices));
                m.insert("residual".into(), json!(format_rational(&e.residual)));
                if let Some(w) = &e.witness {
                    m.insert("witness".into(), json!(w));
                }
                Value::Object(m)
            })
            .collect();
        let mut m = serde_json::Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("params".into(), json!(self.params));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert("control".into(), json!(self.control));
        m.insert("evaluated".into(), json!(self.entries.len()));
        m.insert("residual".into(), json!(format_rational(&self.total_residual())));
        m.insert("indices".into(), Value::Array(offenders));
        if !self.values.is_empty() {
            m.insert("values".into(), json!(self.values));
        }
        Value::Object(m)
    }
}

/// The document written by the command-line tool.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(command: impl Into<String>, params: BTreeMap<String, Value>) -> Self {
        Self { command: command.into(), params, checks: Vec::new() }
    }

    pub fn push(&mut self, c: CheckReport) {
        self.checks.push(c);
    }

    pub fn all_healthy(&self) -> bool {
        self.checks.iter().all(CheckReport::healthy)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "checks": self.checks.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            "version": VERSION,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report values are serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn status_and_health() {
        let ok = CheckReport::exact("a", BTreeMap::new(), vec![ResidualEntry::new("x", int(0))]);
        assert!(ok.passed() && ok.healthy());
        let bad = CheckReport::exact("b", BTreeMap::new(), vec![ResidualEntry::new("y", rat(1, 3))]);
        assert!(!bad.passed());
        assert!(bad.clone().as_control().healthy());
        assert_eq!(bad.to_json()["residual"], "1/3");
    }

    #[test]
    fn render_is_stable() {
        let mut r = Report::new("check", BTreeMap::from([("kappa".to_string(), json!("1/2"))]));
        r.push(CheckReport::exact("c", BTreeMap::new(), vec![]));
        let a = r.render();
        assert_eq!(a, r.render());
        assert!(a.contains("\"version\""));
        assert!(a.find("\"checks\"").unwrap() < a.find("\"command\"").unwrap());
    }
}
