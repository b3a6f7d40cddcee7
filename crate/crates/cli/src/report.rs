//! Machine-readable report assembly: one JSON document per invocation with
//! a stable schema, plus CSV and plain-text renderings.
//!
//! Determinism contract: identical invocations produce byte-identical
//! output. Field order is fixed by struct declaration, reals are rounded to
//! 12 significant digits before serialization, enclosure widths are printed
//! alongside rounded values, and nothing time- or host-dependent enters the
//! report body.

use serde::Serialize;
use serde_json::{json, Value};

use primebound_core::bounds::{ConstantsAudit, RootResult};
use primebound_core::num_traits::ToPrimitive;
use primebound_core::verify::ScanOutcome;
use primebound_core::{CheckVerdict, ThresholdReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    pub params: Params,
    pub result: Value,
    pub diagnostics: Vec<String>,
    pub versions: Versions,
}

#[derive(Serialize)]
pub struct Versions {
    pub spec: &'static str,
}

#[derive(Serialize, Default)]
pub struct Params {
    pub inequality: Option<String>,
    pub function: Option<String>,
    pub c: Option<String>,
    pub k: Option<u64>,
    pub n: Option<u64>,
    pub n_lo: Option<u64>,
    pub n_hi: Option<u64>,
    pub scan_cap: Option<u64>,
    pub tolerance: Option<String>,
    pub precision_bits: u32,
    pub precision_cap_bits: u32,
    pub sieve_limit: Option<u64>,
}

/// Round to 12 significant digits and re-parse, so the JSON number is the
/// shortest representation of the rounded value (deterministic run to run).
pub fn sig12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let s = format!("{x:.11e}");
    match s.parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
        Some(n) => Value::Number(n),
        None => Value::Null,
    }
}

/// 12-significant-digit rendering for CSV / text cells.
pub fn sig12_str(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    let s = format!("{x:.11e}");
    match s.parse::<f64>() {
        Ok(v) => format!("{v}"),
        Err(_) => String::new(),
    }
}

pub fn verdict_value(v: &CheckVerdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "precision_used": v.precision_used,
        "margin": v.margin.map(sig12).unwrap_or(Value::Null),
    })
}

pub fn scan_value(outcome: &ScanOutcome) -> Value {
    json!({
        "n_lo": outcome.n_lo,
        "n_hi": outcome.n_hi,
        "checked": outcome.checked,
        "holds": outcome.checked - outcome.failures.len() as u64 - outcome.undecided.len() as u64,
        "failures": outcome.failures,
        "undecided": outcome.undecided,
    })
}

pub fn root_value(r: &RootResult) -> Value {
    json!({
        "root": sig12(r.root_f64()),
        "enclosure_width": sig12(r.width_f64()),
        "analytic_threshold": biguint_value(&r.analytic_threshold),
        "bracket_lo": sig12(to_f64(&r.bracket_lo)),
        "bracket_hi": sig12(to_f64(&r.bracket_hi)),
        "iterations": r.iterations,
        "monotonicity_violated": r.monotonicity_violated,
        "max_precision_bits": r.max_precision_bits,
    })
}

pub fn threshold_value(report: &ThresholdReport) -> Value {
    json!({
        "minimal_n": report.minimal_n,
        "certified": report.certified,
        "failures_below": report.failures_below,
        "undecided": report.undecided,
        "scan_cap": report.scan_cap,
        "analytic_root": report.analytic.as_ref().map(|r| sig12(r.root_f64())).unwrap_or(Value::Null),
        "analytic_threshold": report
            .analytic
            .as_ref()
            .map(|r| biguint_value(&r.analytic_threshold))
            .unwrap_or(Value::Null),
        "analytic_root_enclosure_width": report
            .analytic
            .as_ref()
            .map(|r| sig12(r.width_f64()))
            .unwrap_or(Value::Null),
    })
}

pub fn constants_value(audit: &ConstantsAudit) -> Value {
    let findings: Vec<Value> = audit
        .findings
        .iter()
        .map(|f| {
            json!({
                "name": f.name,
                "passed": f.passed,
                "measured": f.measured.map(sig12).unwrap_or(Value::Null),
                "tolerance": f.tolerance.map(sig12).unwrap_or(Value::Null),
                "detail": f.detail,
            })
        })
        .collect();
    json!({
        "all_passed": audit.all_passed(),
        "findings": findings,
    })
}

/// Thresholds can exceed u64 (roots grow like exp(1/(1 - log c))); emit a
/// JSON number when it fits and a decimal string otherwise.
fn biguint_value(v: &primebound_core::num_bigint::BigUint) -> Value {
    match v.to_u64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn to_f64(r: &primebound_core::num_rational::BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn render_json(report: &Report) -> String {
    // Reports are small; pretty JSON keeps them diffable.
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}
