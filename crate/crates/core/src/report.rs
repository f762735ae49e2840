//! Structured pass/fail reports and their text / JSON renderings.
//!
//! JSON schema (stable): top level `{version, scenario, checks}`; `scenario`
//! echoes the variety and check list; each entry of `checks` is
//! `{name, status, values, millis}` with `status` one of `pass | fail |
//! skipped` and every exact scalar in `values` rendered as a `p/q` string.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub values: BTreeMap<String, Value>,
    pub millis: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioEcho {
    pub variety: String,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub scenario: ScenarioEcho,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn new(variety: String, check_names: Vec<String>) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            scenario: ScenarioEcho { variety, checks: check_names },
            checks: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scenario: variety={} checks={}\n",
            self.scenario.variety,
            self.scenario.checks.len()
        ));
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{status}  {:<22} {} ms\n", c.name, c.millis));
            for (k, v) in &c.values {
                out.push_str(&format!("      {k} = {}\n", render_value(v)));
            }
        }
        let verdict = if self.all_pass() { "all checks passed" } else { "FAILURES present" };
        out.push_str(&format!("overall: {verdict}\n"));
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Shorthand for building `values` maps.
pub fn values(pairs: Vec<(&str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
