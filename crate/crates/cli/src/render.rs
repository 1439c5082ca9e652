//! Human-readable tables.

use std::fmt::Write;

use multibetti::bounds::VerificationReport;
use multibetti::koszul::{BassTable, GradedTable};
use multibetti::{MonomialIdeal, Presentation, ProbeReport, SubsetMask};
use num_bigint::BigUint;
use serde_json::{json, Value};

/// JSON number when it fits, decimal string otherwise.
pub fn big(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(n) => json!(n),
        Err(_) => json!(v.to_string()),
    }
}

pub fn validation(p: &Presentation, violations: &[String]) -> String {
    if violations.is_empty() {
        format!("valid: {} x {} presentation over {} in {} variables\n", p.rows(), p.cols(), p.field(), p.vars())
    } else {
        format!("invalid: {} violation(s)\n", violations.len())
    }
}

pub fn sets(kind: &str, sets: &[SubsetMask]) -> String {
    let mut out = format!("{} {kind}\n", sets.len());
    for s in sets {
        writeln!(out, "{s}").unwrap();
    }
    out
}

pub fn indexed(label: &str, rows: &[(u64, BigUint)]) -> String {
    let mut out = format!("{:>3}  {label}\n", "i");
    for (i, v) in rows {
        writeln!(out, "{i:>3}  {v}").unwrap();
    }
    out
}

/// Classical layout: one row per (i, degree), then the totals.
pub fn graded(label: &str, t: &GradedTable) -> String {
    let width = t
        .by_index
        .iter()
        .flat_map(|m| m.keys())
        .map(|d| d.to_string().len())
        .max()
        .unwrap_or(6)
        .max(6);
    let mut out = format!("{:>3}  {:<width$}  {label}\n", "i", "degree");
    for (i, m) in t.by_index.iter().enumerate() {
        for (d, v) in m {
            writeln!(out, "{i:>3}  {:<width$}  {v}", d.to_string()).unwrap();
        }
    }
    let totals: Vec<String> = t.totals().iter().map(|v| v.to_string()).collect();
    writeln!(out, "totals: {}", totals.join(" ")).unwrap();
    out
}

pub fn bass_totals(tables: &[BassTable], include_zero: bool, totals: &[u64]) -> String {
    let mut out = String::from("prime  totals\n");
    for t in tables {
        if !include_zero && t.prime.is_empty() {
            continue;
        }
        let vars: Vec<String> = t.prime.indices().iter().map(|j| format!("x{}", j + 1)).collect();
        writeln!(out, "({})  {:?}", vars.join(","), t.totals()).unwrap();
    }
    let totals: Vec<String> = totals.iter().map(|v| v.to_string()).collect();
    writeln!(out, "totals: {}", totals.join(" ")).unwrap();
    out
}

pub fn report(r: &VerificationReport) -> String {
    let mut out = String::new();
    let totals: Vec<String> = r.totals.iter().map(|v| v.to_string()).collect();
    writeln!(out, "totals: {}", totals.join(" ")).unwrap();
    for c in &r.size_checks {
        writeln!(out, "i={}: computed {} expected {} {}", c.i, c.computed, c.expected, verdict(c.pass)).unwrap();
    }
    writeln!(out, "{:>3}  {:>8}  {:>8}  {:>8}  result", "i", "computed", "bound", "slack").unwrap();
    for c in &r.checks {
        let tag = if c.equal { " (equal)" } else { "" };
        writeln!(out, "{:>3}  {:>8}  {:>8}  {:>8}  {}{tag}", c.i, c.computed, c.bound, c.slack, verdict(c.pass))
            .unwrap();
    }
    writeln!(out, "overall: {}", verdict(r.pass)).unwrap();
    out
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn ideal(i: &MonomialIdeal, agrees: bool) -> String {
    let gens: Vec<String> = i.gens.iter().map(|g| g.to_string()).collect();
    let mut out = format!("generators: {}\n", if gens.is_empty() { "none (zero ideal)".into() } else { gens.join(" ") });
    if !agrees {
        out.push_str("warning: membership and intersection constructions disagree\n");
    }
    out
}

pub fn probe(r: &ProbeReport) -> String {
    let mut out = format!("a = {}: {} of {} comparisons match\n", r.a, r.matches, r.compared);
    for m in &r.mismatches {
        writeln!(
            out,
            "mismatch i={} b={}: beta = {}, mu at p{} in degree {} = {}",
            m.i, m.b, m.betti, m.prime, m.bass_degree, m.bass
        )
        .unwrap();
    }
    writeln!(out, "total Bass numbers: {:?}", r.total_bass).unwrap();
    writeln!(out, "candidate Betti totals: {:?}", r.candidate_betti).unwrap();
    writeln!(out, "overall: {}", verdict(r.pass)).unwrap();
    out
}
