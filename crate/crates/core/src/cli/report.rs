//! Human-readable and JSON renderings of weights, analyses and sweeps.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::analysis::{equivalence_report, AnalysisReport, DualityCheck, EquivalenceRow};
use crate::code::{Isometry, RankCode};
use crate::error::Result;
use crate::gf::{Elem, FieldSpec};
use crate::weights::{WeightConfig, WeightProfile};

use super::format::{encode_base, encode_elem, field_json, to_text, FieldJson};
use super::sweep::{SweepSummary, Tally};

#[derive(Serialize)]
struct Weights<'a> {
    jp: &'a [usize],
    kmu: &'a [usize],
    os: &'a [usize],
    ducoat: &'a [usize],
    closure: &'a [usize],
}

#[derive(Serialize)]
struct IsometryJson {
    scalar: Value,
    matrix: Vec<Vec<Value>>,
}

#[derive(Serialize)]
struct AnalysisJson<'a> {
    degenerate: bool,
    rsupp_full: bool,
    duality_ok: bool,
    bound_km_ge_n: bool,
    m_ge_n: bool,
    witness_h: Option<Vec<Value>>,
    witness_isometry: Option<IsometryJson>,
    duality: &'a DualityCheck,
    equivalence: &'a [EquivalenceRow],
    failures: &'a [String],
}

#[derive(Serialize)]
struct Document<'a> {
    field: FieldJson,
    n: usize,
    k: usize,
    weights: Weights<'a>,
    enumerators: &'a [Vec<u64>],
    analysis: AnalysisJson<'a>,
}

fn vector(x: &[Elem], spec: &FieldSpec) -> Vec<Value> {
    x.iter().map(|&e| encode_elem(e, spec)).collect()
}

fn isometry(iso: &Isometry, spec: &FieldSpec) -> IsometryJson {
    IsometryJson {
        scalar: encode_elem(iso.scalar(), spec),
        matrix: iso
            .matrix()
            .iter_rows()
            .map(|row| row.iter().map(|&e| encode_base(e, spec)).collect())
            .collect(),
    }
}

/// The JSON document shared by `weights`, `enumerator` and `analyze`:
/// `{field, n, k, weights, enumerators, analysis}`.
pub fn document(c: &RankCode, cfg: &WeightConfig) -> Result<String> {
    let rep = equivalence_report(c, cfg)?;
    Ok(render_document(c, &rep))
}

pub fn render_document(c: &RankCode, rep: &AnalysisReport) -> String {
    let spec = c.field().spec();
    let p: &WeightProfile = &rep.profile;
    let doc = Document {
        field: field_json(spec),
        n: c.n(),
        k: c.k(),
        weights: Weights {
            jp: &p.jp,
            kmu: &p.kmu,
            os: &p.os,
            ducoat: &p.ducoat,
            closure: &p.closure,
        },
        enumerators: &p.enumerators,
        analysis: AnalysisJson {
            degenerate: rep.degenerate,
            rsupp_full: rep.rsupp_full,
            duality_ok: rep.duality_ok(),
            bound_km_ge_n: rep.bound_km_ge_n,
            m_ge_n: rep.m_ge_n,
            witness_h: rep.witness_h.as_ref().map(|h| vector(h, spec)),
            witness_isometry: rep.witness_isometry.as_ref().map(|i| isometry(i, spec)),
            duality: &rep.duality,
            equivalence: &rep.equivalence,
            failures: &rep.failures,
        },
    };
    serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
}

fn compact(v: impl Serialize) -> String {
    serde_json::to_string(&v).expect("value serializes")
}

pub fn analysis_text(c: &RankCode, rep: &AnalysisReport) -> String {
    let spec = c.field().spec();
    let p = &rep.profile;
    let mut out = String::new();
    writeln!(
        out,
        "field: p={} s={} m={} l_poly={}",
        spec.p,
        spec.s,
        spec.m,
        compact(&field_json(spec).l_poly)
    )
    .unwrap();
    writeln!(out, "n: {}  k: {}", c.n(), c.k()).unwrap();
    writeln!(out, "degenerate: {}", rep.degenerate).unwrap();
    if let Some(h) = &rep.witness_h {
        writeln!(out, "witness_h: {}", compact(vector(h, spec))).unwrap();
    }
    if let Some(iso) = &rep.witness_isometry {
        let j = isometry(iso, spec);
        writeln!(
            out,
            "witness_isometry: scalar {} matrix {}",
            compact(&j.scalar),
            compact(&j.matrix)
        )
        .unwrap();
    }
    writeln!(out, "rsupp_full: {}", rep.rsupp_full).unwrap();
    writeln!(
        out,
        "duality: {} (weights {} complement {})",
        if rep.duality_ok() { "holds" } else { "fails" },
        compact(&rep.duality.code_weights),
        compact(&rep.duality.complement)
    )
    .unwrap();
    writeln!(out, "bound_km_ge_n: {}", rep.bound_km_ge_n).unwrap();
    writeln!(out, "m_ge_n: {}", rep.m_ge_n).unwrap();
    writeln!(out, "weights:").unwrap();
    for r in 0..=p.k {
        writeln!(
            out,
            "  r={r} jp:{} kmu:{} os:{} ducoat:{} closure:{}",
            p.jp[r], p.kmu[r], p.os[r], p.ducoat[r], p.closure[r]
        )
        .unwrap();
    }
    writeln!(out, "equivalence:").unwrap();
    for row in &rep.equivalence {
        let status = match (row.agree, row.required) {
            (true, _) => "agree",
            (false, true) => "DIFFER",
            (false, false) => "differ (not required, m < n)",
        };
        writeln!(out, "  {}={} r={}: {status}", row.left, row.right, row.r).unwrap();
    }
    if rep.failures.is_empty() {
        writeln!(out, "failures: none").unwrap();
    } else {
        writeln!(out, "failures:").unwrap();
        for f in &rep.failures {
            writeln!(out, "  {f}").unwrap();
        }
    }
    out
}

pub fn sweep_text(s: &SweepSummary) -> String {
    let mut out = format!("codes: {}\n", s.codes);
    for (prop, t) in &s.tallies {
        let status = if t.failed == 0 { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{status} {prop}: {} passed, {} failed, {} skipped",
            t.passed, t.failed, t.skipped
        )
        .unwrap();
    }
    for f in &s.failures {
        writeln!(out, "\nFAIL {}: {}", f.property, f.message).unwrap();
        out += &to_text(&f.code);
    }
    out
}

#[derive(Serialize)]
struct SweepJson<'a> {
    codes: usize,
    passed: bool,
    properties: Vec<PropertyJson<'a>>,
    failures: Vec<FailureJson<'a>>,
}

#[derive(Serialize)]
struct PropertyJson<'a> {
    name: &'a str,
    #[serde(flatten)]
    tally: &'a Tally,
}

#[derive(Serialize)]
struct FailureJson<'a> {
    property: &'a str,
    message: &'a str,
    code: String,
}

pub fn sweep_json(s: &SweepSummary) -> String {
    let doc = SweepJson {
        codes: s.codes,
        passed: s.passed(),
        properties: s
            .tallies
            .iter()
            .map(|(p, tally)| PropertyJson {
                name: p.name(),
                tally,
            })
            .collect(),
        failures: s
            .failures
            .iter()
            .map(|f| FailureJson {
                property: f.property.name(),
                message: &f.message,
                code: to_text(&f.code),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("sweep serializes") + "\n"
}
