//! Rendering of verdicts and reports as JSON, CSV, and human text.
//!
//! JSON is canonical: objects serialize with sorted keys (serde_json's
//! default map) and every integer is a decimal string, so parsing and
//! re-serializing is byte-identical and no consumer needs big integers
//! to read the constants losslessly.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use rnagell_core::engine::{
    CertStep, DensityReport, StructureReport, Verdict, Z1Fundamentals,
};
use rnagell_core::pell::PellFundamental;
use rnagell_core::sandwich::CaseVerdict;

fn s(value: impl ToString) -> Value {
    Value::String(value.to_string())
}

fn pell_json(pell: &PellFundamental) -> Value {
    json!({
        "d": s(&pell.d),
        "u1": s(&pell.u1),
        "v1": s(&pell.v1),
    })
}

fn step_json(step: &CertStep) -> Value {
    let mut obj = Map::new();
    obj.insert("rule".into(), s(step.rule_name()));
    match step {
        CertStep::EvenZExcluded { y, cited } => {
            obj.insert("y".into(), s(y));
            let cases: Vec<Value> = cited
                .iter()
                .map(|c| json!({"label": s(&c.label), "threshold": s(&c.threshold)}))
                .collect();
            obj.insert("cited".into(), Value::Array(cases));
        }
        CertStep::JacobiDivisor { p, jacobi_2_p } => {
            obj.insert("p".into(), s(p));
            obj.insert("jacobi_2_p".into(), s(jacobi_2_p));
        }
        CertStep::SquareK { root, cited } => {
            obj.insert("root".into(), s(root));
            let cases: Vec<Value> = cited
                .iter()
                .map(|c| json!({"label": s(&c.label), "threshold": s(&c.threshold)}))
                .collect();
            obj.insert("cited".into(), Value::Array(cases));
        }
        CertStep::ClassNumber { disc, h } => {
            obj.insert("disc".into(), s(disc));
            obj.insert("h".into(), s(h));
        }
        CertStep::PellLeast { d, u1, v1 } => {
            obj.insert("d".into(), s(d));
            obj.insert("u1".into(), s(u1));
            obj.insert("v1".into(), s(v1));
        }
        CertStep::FundamentalSet { k_const, sets } => {
            obj.insert("constant".into(), s(k_const));
            let sets: Vec<Value> = sets
                .iter()
                .map(|set| {
                    let pairs: Vec<Value> = set
                        .pairs
                        .iter()
                        .map(|(x, y)| json!([s(x), s(y)]))
                        .collect();
                    json!({
                        "z1": s(set.z1),
                        "ceiling": s(&set.ceiling),
                        "pairs": Value::Array(pairs),
                    })
                })
                .collect();
            obj.insert("sets".into(), Value::Array(sets));
        }
        CertStep::CongruenceElim { p, entries } => {
            obj.insert("p".into(), s(p));
            let entries: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "z1": s(e.z1),
                        "x1": s(&e.x1),
                        "y1": s(&e.y1),
                        "lambda": s(e.lambda),
                        "t": s(e.t),
                        "g": s(&e.g_abs),
                        "residue": s(&e.residue),
                    })
                })
                .collect();
            obj.insert("entries".into(), Value::Array(entries));
        }
        CertStep::StructureOnly { admissible_z1 } => {
            let zs: Vec<Value> = admissible_z1.iter().map(s).collect();
            obj.insert("admissible_z1".into(), Value::Array(zs));
        }
    }
    Value::Object(obj)
}

fn structure_json(report: &StructureReport) -> Value {
    let fundamentals: Vec<Value> = report
        .fundamentals
        .iter()
        .map(|set| {
            let pairs: Vec<Value> = set
                .reps
                .iter()
                .map(|r| json!([s(&r.x1), s(&r.y1)]))
                .collect();
            json!({
                "z1": s(set.z1),
                "ceiling": s(&set.ceiling),
                "pairs": Value::Array(pairs),
            })
        })
        .collect();
    json!({
        "h4k": s(report.h4k),
        "pell": pell_json(&report.pell),
        "admissible_z1": Value::Array(report.admissible_z1.iter().map(s).collect()),
        "fundamentals": Value::Array(fundamentals),
    })
}

pub fn verdict_json(verdict: &Verdict) -> Value {
    let mut obj = Map::new();
    obj.insert("k".into(), s(&verdict.k));
    obj.insert("y".into(), s(verdict.y));
    obj.insert("status".into(), s(verdict.status));
    if let Some(rule) = verdict.certificate.deciding_rule() {
        obj.insert("rule".into(), s(rule));
    }
    obj.insert(
        "certificate".into(),
        Value::Array(verdict.certificate.steps.iter().map(step_json).collect()),
    );
    obj.insert(
        "solutions".into(),
        Value::Array(
            verdict
                .solutions
                .iter()
                .map(|(x, z)| json!([s(x), s(z)]))
                .collect(),
        ),
    );
    if let Some(report) = &verdict.structure {
        obj.insert("structure".into(), structure_json(report));
    }
    obj.insert(
        "diagnostics".into(),
        Value::Array(verdict.diagnostics.iter().map(s).collect()),
    );
    Value::Object(obj)
}

pub const CSV_HEADER: &str = "k,y,status,rule_that_decided,h4k,pell_u1,pell_v1,runtime_ms";

pub fn verdict_csv_row(verdict: &Verdict, runtime_ms: u128) -> String {
    let (h4k, u1, v1) = match &verdict.structure {
        Some(r) => (
            r.h4k.to_string(),
            r.pell.u1.to_string(),
            r.pell.v1.to_string(),
        ),
        None => (String::new(), String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{},{},{}",
        verdict.k,
        verdict.y,
        verdict.status,
        verdict.certificate.deciding_rule().unwrap_or(""),
        h4k,
        u1,
        v1,
        runtime_ms
    )
}

fn sqrt_term(d: &BigUint) -> String {
    format!("sqrt({d})")
}

fn step_human(step: &CertStep, d: &BigUint) -> String {
    match step {
        CertStep::EvenZExcluded { cited, .. } => {
            let cites: Vec<String> = cited
                .iter()
                .map(|c| format!("{} (Y0 = {})", c.label, c.threshold))
                .collect();
            format!("even z excluded: cites {}", cites.join(", "))
        }
        CertStep::JacobiDivisor { p, jacobi_2_p } => format!(
            "divisor criterion: p = {p} divides 2k-1 with jacobi(2, {p}) = {jacobi_2_p}"
        ),
        CertStep::SquareK { root, cited } => {
            let cites: Vec<String> = cited
                .iter()
                .map(|c| format!("{} (Y0 = {})", c.label, c.threshold))
                .collect();
            format!("square k: k = {root}^2, cites {}", cites.join(", "))
        }
        CertStep::ClassNumber { disc, h } => format!("class number: h({disc}) = {h}"),
        CertStep::PellLeast { d, u1, v1 } => {
            format!("least Pell solution for D = {d}: (U1, V1) = ({u1}, {v1})")
        }
        CertStep::FundamentalSet { k_const, sets } => {
            let mut parts = Vec::new();
            for set in sets {
                let pairs: Vec<String> = set
                    .pairs
                    .iter()
                    .map(|(x, y)| format!("({x}, {y}, {})", set.z1))
                    .collect();
                let listed = if pairs.is_empty() {
                    "empty".to_string()
                } else {
                    pairs.join(", ")
                };
                parts.push(format!(
                    "z1 = {}: X1 + Y1*{} < {}, set {{{listed}}}",
                    set.z1,
                    sqrt_term(d),
                    set.ceiling
                ));
            }
            format!("fundamental sets for K = {k_const}: {}", parts.join("; "))
        }
        CertStep::CongruenceElim { p, entries } => {
            let residues: Vec<String> = entries
                .iter()
                .map(|e| {
                    format!(
                        "lambda = {:+}: g = {} = {} mod {p}",
                        e.lambda, e.g_abs, e.residue
                    )
                })
                .collect();
            format!(
                "congruence elimination at p = {p}: {} (all nonzero)",
                residues.join("; ")
            )
        }
        CertStep::StructureOnly { admissible_z1 } => {
            let zs: Vec<String> = admissible_z1.iter().map(u32::to_string).collect();
            format!(
                "no criterion applied; admissible z1 = [{}]",
                zs.join(", ")
            )
        }
    }
}

pub fn verdict_human(verdict: &Verdict) -> String {
    let odd = (&verdict.k << 1u32) - BigUint::from(1u32);
    let mut out = format!(
        "x^2 + {odd}^{} = {}^z: {}\n",
        verdict.y, verdict.k, verdict.status
    );
    for (i, step) in verdict.certificate.steps.iter().enumerate() {
        out.push_str(&format!("  {}. {}\n", i + 1, step_human(step, &verdict.k)));
    }
    for diag in &verdict.diagnostics {
        out.push_str(&format!("  diagnostic: {diag}\n"));
    }
    out
}

pub fn density_json(report: &DensityReport) -> Value {
    json!({
        "n": s(report.n),
        "qualifying": s(report.qualifying),
        "unknown": s(report.unknown),
        "ratio": {
            "num": s(report.ratio.numer()),
            "den": s(report.ratio.denom()),
        },
        "heuristic": {
            "num": s(report.heuristic.numer()),
            "den": s(report.heuristic.denom()),
        },
        "prime_cutoff": s(report.prime_cutoff),
    })
}

fn ratio_approx(num: &BigUint, den: &BigUint) -> f64 {
    let scaled = (num * BigUint::from(1_000_000u32)) / den;
    u64::try_from(scaled).map(|v| v as f64 / 1e6).unwrap_or(f64::NAN)
}

pub fn density_human(report: &DensityReport) -> String {
    let mut out = format!(
        "N = {}: qualifying {} of {} (ratio {}/{} = {:.4}), unknown {}\n",
        report.n,
        report.qualifying,
        report.n,
        report.ratio.numer(),
        report.ratio.denom(),
        ratio_approx(report.ratio.numer(), report.ratio.denom()),
        report.unknown
    );
    out.push_str(&format!(
        "heuristic 1 - prod(1 - 1/p) over p = +-3 mod 8, p <= {}: {:.4} (exact rational in --json)\n",
        report.prime_cutoff,
        ratio_approx(report.heuristic.numer(), report.heuristic.denom()),
    ));
    out
}

pub fn suite_json(cases: &[CaseVerdict]) -> Value {
    let entries: Vec<Value> = cases
        .iter()
        .map(|cv| {
            let solutions: Vec<Value> = cv
                .verdict
                .solutions
                .iter()
                .map(|(x, y)| json!([s(x), s(y)]))
                .collect();
            json!({
                "label": s(cv.case.label()),
                "branch": s(cv.verdict.criterion.branch.as_str()),
                "m_root": s(&cv.verdict.criterion.m_root),
                "m_remainder": s(&cv.verdict.criterion.m_remainder),
                "m_gap": s(&cv.verdict.criterion.m_gap),
                "threshold": s(&cv.verdict.criterion.threshold),
                "scanned_max": s(&cv.verdict.scanned_max),
                "solutions": Value::Array(solutions),
                "certified": Value::Bool(cv.verdict.certified()),
            })
        })
        .collect();
    Value::Array(entries)
}

pub fn suite_human(cases: &[CaseVerdict]) -> String {
    let mut out = String::new();
    for cv in cases {
        out.push_str(&format!(
            "{}: branch {}, G = {}, R = {}, m = ({}, {}, {}), Y0 = {}, scan clean: {}\n",
            cv.case.label(),
            cv.verdict.criterion.branch.as_str(),
            cv.verdict.criterion.root,
            cv.verdict.criterion.remainder,
            cv.verdict.criterion.m_root,
            cv.verdict.criterion.m_remainder,
            cv.verdict.criterion.m_gap,
            cv.verdict.criterion.threshold,
            cv.verdict.certified()
        ));
    }
    out
}

pub fn fundamental_sets_json(d: &BigUint, sets: &[Z1Fundamentals]) -> Value {
    let rendered: Vec<Value> = sets
        .iter()
        .map(|set| {
            let pairs: Vec<Value> = set
                .reps
                .iter()
                .map(|r| json!([s(&r.x1), s(&r.y1)]))
                .collect();
            json!({
                "z1": s(set.z1),
                "ceiling": s(&set.ceiling),
                "pairs": Value::Array(pairs),
            })
        })
        .collect();
    json!({"d": s(d), "sets": Value::Array(rendered)})
}
