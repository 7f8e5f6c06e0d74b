//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: true, detail: detail.into(), witness: None }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: impl Into<String>) -> Check {
        Check { name: name.into(), passed: false, detail: detail.into(), witness: Some(witness.into()) }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: ok, detail: detail.into(), witness: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub certificates: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), checks: Vec::new(), certificates: Map::new(), timing_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn certify(&mut self, key: impl Into<String>, v: impl Serialize) {
        self.certificates.insert(key.into(), serde_json::to_value(v).expect("certificates serialize"));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// JSON without the timing field, for byte-level comparison between runs.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timing_ms = None;
        serde_json::to_string_pretty(&r).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
