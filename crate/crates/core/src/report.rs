//! Text, JSON and CSV renderings. Every float is rounded to 15 significant
//! digits so outputs compare directly with 15-digit printed values and are
//! byte-stable across runs.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;
use serde_json::Value;

use crate::classify::{CaseReport, CertificateReport, SweepReport};

pub const CSV_HEADER: &str = "case,classification,witness_b,residual,spectrum";

/// Round to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Shortest text of the 15-significant-digit rounding.
pub fn fmt15(x: f64) -> String {
    match round15(x) {
        v if v.is_nan() => "NaN".into(),
        v if v.is_infinite() => if v > 0.0 { "inf".into() } else { "-inf".into() },
        v if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e15) => format!("{v:e}"),
        v => format!("{v}"),
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().expect("f64"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with floats rounded to 15 significant digits. Non-finite
/// floats become `null`.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&round_value(v)).expect("json value serializes");
    s.push('\n');
    s
}

fn join15(xs: &[f64], sep: &str) -> String {
    xs.iter().map(|x| fmt15(*x)).join(sep)
}

fn positions(p: &[usize]) -> String {
    format!("{{{}}}", p.iter().join(","))
}

/// One row per witness of each case; a case with no witness gets one row
/// with empty witness fields.
pub fn case_reports_csv<'a>(reports: impl IntoIterator<Item = &'a CaseReport>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let case = r.case.positions().iter().join(";");
        let class = r.classification.as_str();
        if r.witnesses.is_empty() {
            let _ = writeln!(out, "{case},{class},,,");
        }
        for w in &r.witnesses {
            let _ = writeln!(
                out,
                "{case},{class},{},{},{}",
                join15(&w.b, ";"),
                fmt15(w.residual),
                join15(&w.spectrum, ";")
            );
        }
    }
    out
}

pub fn case_report_text(r: &CaseReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case {}: {} ({})", r.case, r.classification.as_str(), r.classification.verdict_label());
    let _ = writeln!(out, "  fixed values: {}", join15(r.case.values(), ", "));
    let _ = writeln!(out, "  {}", r.note);
    for w in &r.witnesses {
        let _ = writeln!(
            out,
            "  witness b = ({})  residual {}  {}",
            join15(&w.b, ", "),
            fmt15(w.residual),
            if w.nontrivial { "nontrivial" } else { "trivial" }
        );
        let _ = writeln!(out, "    ordered spectrum ({})", join15(&w.spectrum, ", "));
    }
    for c in &r.checks {
        let _ = writeln!(
            out,
            "  position {}: expected {} got {} deviation {} {}",
            c.position,
            fmt15(c.expected),
            fmt15(c.actual),
            fmt15(c.deviation),
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    for (name, o) in [("subst", &r.subst), ("coeff", &r.coeff)] {
        if let Some(o) = o {
            let _ = writeln!(
                out,
                "  {name}: {} real solutions, {} verified, {} rejected by ordering -> {}",
                o.solutions_found,
                o.witnesses.len(),
                o.rejected.len(),
                o.classification.as_str()
            );
        }
    }
    if let Some(x) = &r.cross_check {
        let _ = writeln!(
            out,
            "  formulations {}: max projected residual {}, unmatched {}",
            if x.classifications_agree && x.witness_sets_agree { "agree" } else { "DISAGREE" },
            fmt15(x.max_projected_residual),
            x.unmatched_projections
        );
    }
    out
}

pub fn sweep_text(s: &SweepReport) -> String {
    let mut out = String::new();
    let total: usize = s.classes.iter().map(|c| c.members.len()).sum();
    let _ = writeln!(
        out,
        "n={} m={}: {} symmetry classes, {} cases, {} starts, seed {}",
        s.n,
        s.m,
        s.classes.len(),
        total,
        s.config.starts,
        s.config.seed
    );
    let _ = writeln!(out, "{:<12} {:<24} {:<13} {:<6} {:<5} witness", "class", "members", "result", "label", "Q1");
    for c in &s.classes {
        let members = c.members.iter().map(|m| positions(m)).join(" ");
        let witness = c
            .report
            .nontrivial_witnesses()
            .next()
            .map(|w| format!("b=({})", join15(&w.b, ", ")))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<12} {:<24} {:<13} {:<6} {:<5} {}",
            positions(&c.representative),
            members,
            c.classification.as_str(),
            c.classification.verdict_label(),
            if c.consecutive { "yes" } else { "no" },
            witness
        );
    }
    out
}

pub fn certificate_text(r: &CertificateReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "printed witness  ({})", join15(&r.printed, ", "));
    let _ = writeln!(out, "polished witness ({})", join15(&r.polished, ", "));
    let _ = writeln!(out, "ordered spectrum ({})", join15(&r.polished_spectrum, ", "));
    let _ = writeln!(out, "nested radical b1 = {}", fmt15(r.nested_radical_b1));
    for c in &r.checks {
        let _ = writeln!(
            out,
            "[{}] {:<44} |{}| <= {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            fmt15(c.value.abs()),
            fmt15(c.tolerance)
        );
    }
    let _ = writeln!(out, "{}", if r.passed { "ALL CHECKS PASSED" } else { "CHECKS FAILED" });
    out
}
