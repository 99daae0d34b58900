//! JSON envelope and plain-text rendering of command results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use grpkit_core::corpus::CorpusReport;
use grpkit_core::criteria::CriterionResult;
use grpkit_core::VerificationReport;
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wrapper around every `--json` result. Field order is fixed by the
/// struct declaration; `inputs` is sorted by key.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ReportEnvelope {
    pub fn new<T: Serialize>(
        command: &str,
        inputs: BTreeMap<String, String>,
        result: &T,
    ) -> serde_json::Result<Self> {
        Ok(ReportEnvelope {
            version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            result: serde_json::to_value(result)?,
            elapsed_ms: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope is always serializable")
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_verification(r: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &r.claims {
        let _ = write!(s, "[{}] {} {}", verdict(c.pass), c.id, c.statement);
        if c.pass {
            let _ = write!(s, " ({})", c.computed);
        } else {
            let _ = write!(s, " (expected {}, computed {})", c.expected, c.computed);
        }
        if let Some(us) = c.micros {
            let _ = write!(s, " [{} ms]", us / 1000);
        }
        s.push('\n');
    }
    for f in &r.informational {
        let _ = writeln!(s, "info: {} = {}", f.key, f.value);
    }
    let passed = r.claims.iter().filter(|c| c.pass).count();
    let _ = writeln!(
        s,
        "overall: {} ({passed}/{} claims, seed {})",
        verdict(r.overall),
        r.claims.len(),
        r.seed
    );
    s
}

pub fn render_criterion(r: &CriterionResult) -> String {
    let mut s = format!("{}: {}\n", r.name, if r.holds { "holds" } else { "fails" });
    if !r.witnesses.is_empty() {
        s.push_str("  maximal  |G:M|  value  class      ok\n");
        for w in &r.witnesses {
            let class = serde_json::to_value(w.class)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "  {:>7}  {:>5}  {:>5}  {:<9}  {}",
                w.maximal, w.maximal_index, w.value, class, w.ok
            );
        }
    }
    if let Some(w) = r.failing_witness() {
        let _ = writeln!(s, "failing witness: maximal {} with value {}", w.maximal, w.value);
    }
    for f in &r.facts {
        let _ = writeln!(s, "  {} = {}", f.key, f.value);
    }
    s
}

pub fn render_corpus(r: &CorpusReport) -> String {
    let mut s = format!("corpus {}\n", r.check);
    let width = r.rows.iter().map(|x| x.group.len()).max().unwrap_or(5).max(5);
    for row in &r.rows {
        let _ = writeln!(
            s,
            "  {:<width$}  {:>5}  {}  {}",
            row.group,
            row.order,
            verdict(row.pass),
            row.detail
        );
    }
    let failed = r.rows.iter().filter(|x| !x.pass).count();
    let _ = writeln!(s, "overall: {} ({failed} failing of {})", verdict(r.pass), r.rows.len());
    s
}
