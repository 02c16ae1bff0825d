//! JSON rendering of verification reports.
//!
//! One report is one JSON object with exactly the keys `identity`,
//! `parameters`, `terms_checked`, `failures`, `elapsed_ms` and
//! `convention_notes`. Maps iterate in sorted order, so output bytes are
//! deterministic for a fixed report.

use ncjacobi_core::report::VerificationReport;
use serde_json::{json, Map, Value};

pub fn report_to_json(report: &VerificationReport) -> Value {
    let mut parameters = Map::new();
    for (k, v) in &report.parameters {
        parameters.insert(k.clone(), Value::String(v.clone()));
    }
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            json!({
                "index": f.index,
                "lhs": f.lhs,
                "rhs": f.rhs,
            })
        })
        .collect();
    json!({
        "identity": report.identity,
        "parameters": Value::Object(parameters),
        "terms_checked": report.terms_checked,
        "failures": failures,
        "elapsed_ms": report.elapsed_ms,
        "convention_notes": report.convention_notes,
    })
}

pub fn write_report(path: &std::path::Path, report: &VerificationReport) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(&report_to_json(report)).expect("valid json");
    text.push('\n');
    std::fs::write(path, text)
}
