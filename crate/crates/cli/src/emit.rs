//! JSON and DOT output.

use std::fmt::Write as _;

use serde_json::{json, Value};

use qwedge_core::crystal::CrystalGraph;
use qwedge_core::linalg::SparseMatrix;
use qwedge_core::rmatrix::RMatrix;
use qwedge_core::rootdata::AffineDatum;
use qwedge_core::scalar::RationalScalar;
use qwedge_core::vectorrep::Representation;

use crate::suite::SuiteReport;

/// Edge colors by crystal color; color 0 is additionally dashed.
pub const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

pub fn emit_dot(graph: &CrystalGraph) -> String {
    let mut out = String::from("digraph crystal {\n  node [shape=box, fontname=\"monospace\"];\n");
    for v in &graph.vertices {
        let label = match &graph.labels {
            Some(l) => l[v.id].to_string(),
            None => v.weight.to_string(),
        };
        let _ = writeln!(out, "  v{} [label=\"{}\"];", v.id, label);
    }
    let mut edges = graph.edges.clone();
    edges.sort();
    for e in &edges {
        let color = PALETTE[e.color % PALETTE.len()];
        let style = if e.color == 0 { ", style=dashed" } else { "" };
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\", color=\"{}\"{}];", e.src, e.dst, e.color, color, style);
    }
    out.push_str("}\n");
    out
}

pub fn emit_report(report: &SuiteReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn datum_json(d: &AffineDatum) -> Value {
    let eps: Vec<Value> = d.index_set.iter().map(|&j| json!([j, d.eps(j).to_json_value()])).collect();
    let bar: Vec<Value> = d.index_set.iter().map(|&j| json!([j, d.bar(j)])).collect();
    json!({
        "type": d.kind().cli_name(),
        "n": d.n(),
        "marks": d.marks,
        "comarks": d.comarks,
        "simple_roots": d.simple_roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        "bilinear_scale": d.bilinear_scale.to_string(),
        "index_set": d.index_set,
        "xi": d.xi.to_json_value(),
        "xi_prime": d.xi_prime.to_json_value(),
        "N": d.big_n,
        "eps": eps,
        "bar": bar,
        "root_length": d.root_length,
    })
}

/// Nonzero entries as `[row index, column index, scalar]`, with rows and
/// columns named by elements of the index set.
fn matrix_json(d: &AffineDatum, m: &SparseMatrix<RationalScalar>) -> Value {
    let mut entries: Vec<(usize, usize, &RationalScalar)> = m.triplets().collect();
    entries.sort_by_key(|&(r, c, _)| (r, c));
    Value::Array(entries.into_iter().map(|(r, c, x)| json!([d.index_at(r), d.index_at(c), x.to_json_value()])).collect())
}

pub fn rep_json(rep: &Representation<RationalScalar>, relations_passed: bool) -> Value {
    let d = &rep.datum;
    let gens = |ms: &[SparseMatrix<RationalScalar>]| ms.iter().map(|m| matrix_json(d, m)).collect::<Vec<_>>();
    let weights: Vec<Value> = d.index_set.iter().zip(&rep.weights).map(|(j, w)| json!([j, w.0])).collect();
    json!({
        "datum": datum_json(d),
        "weights": weights,
        "e": gens(&rep.mats.e),
        "f": gens(&rep.mats.f),
        "t": gens(&rep.mats.t),
        "defining_relations_hold": relations_passed,
    })
}

/// Entries `Ř(z)[(a,b),(c,d)]` as `[[a,b],[c,d],poly]`, `poly` a list of
/// `[z-exponent, scalar]`.
pub fn rmatrix_json(r: &RMatrix) -> Value {
    let d = &r.datum;
    let dim = d.dim();
    let pair = |p: usize| json!([d.index_at(p / dim), d.index_at(p % dim)]);
    let mut entries: Vec<_> = r.matrix.triplets().collect();
    entries.sort_by_key(|&(a, b, _)| (a, b));
    let entries: Vec<Value> = entries
        .into_iter()
        .map(|(a, b, x)| {
            let poly: Vec<Value> = x.terms().map(|(e, c)| json!([e, c.to_json_value()])).collect();
            json!([pair(a), pair(b), poly])
        })
        .collect();
    json!({ "datum": datum_json(d), "entries": entries })
}
