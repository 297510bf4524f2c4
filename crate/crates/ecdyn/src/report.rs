//! JSON-facing views of predictions, brute-force summaries and
//! reconciliation verdicts, plus the plain-text census table. Big integers
//! are rendered as decimal strings so reports stay valid JSON at any size.

use crate::config::Analysis;
use crate::curve::ClassTag;
use crate::dynamics::FunctionalGraph;
use crate::predictor::{ClassPrediction, ReconcileReport, Side, StructureReport};
use crate::quadorder::{Factorization, PrimeIdealFactor};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Serialize)]
pub struct JsonFactor {
    pub p: u64,
    pub kind: &'static str,
    pub ideal: String,
    pub prime_norm: String,
    pub exponent: u32,
}

impl From<&PrimeIdealFactor> for JsonFactor {
    fn from(f: &PrimeIdealFactor) -> Self {
        JsonFactor {
            p: f.p,
            kind: f.kind.name(),
            ideal: f.ideal.to_string(),
            prime_norm: f.prime_norm().to_string(),
            exponent: f.exponent,
        }
    }
}

fn factors_json(f: &Factorization) -> Vec<JsonFactor> {
    f.factors.iter().map(JsonFactor::from).collect()
}

#[derive(Serialize)]
pub struct JsonCycleClass {
    pub h: Vec<u32>,
    pub n_counts: Vec<String>,
    pub s_parts: Vec<(u64, i8)>,
    pub s_prime: u64,
    pub s: u64,
    pub count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<String>,
}

#[derive(Serialize)]
pub struct JsonTreeShape {
    pub depth: u32,
    pub v: Vec<String>,
    pub non_e0_levels: Vec<String>,
    pub e0_roots: Vec<JsonE0Root>,
}

#[derive(Serialize)]
pub struct JsonE0Root {
    pub vertex: u32,
    pub label: String,
    pub levels: Vec<String>,
}

#[derive(Serialize)]
pub struct JsonClassPrediction {
    pub class: String,
    pub delta: String,
    pub delta_norm: String,
    pub delta_factors: Vec<JsonFactor>,
    pub i_c: Vec<JsonFactor>,
    pub i_t: Vec<JsonFactor>,
    pub cycle_classes: Vec<JsonCycleClass>,
    pub predicted_census: Vec<JsonCensusEntry>,
    pub tree: JsonTreeShape,
}

#[derive(Serialize)]
pub struct JsonCensusEntry {
    pub length: u64,
    pub count: String,
}

#[derive(Serialize)]
pub struct JsonSpecialCycle {
    pub length: usize,
    pub labels: Vec<String>,
}

#[derive(Serialize)]
pub struct JsonPrediction {
    pub alpha: String,
    pub alpha_factors: Vec<JsonFactor>,
    pub special_cycles: Vec<JsonSpecialCycle>,
    pub a: JsonClassPrediction,
    pub b: JsonClassPrediction,
}

fn census_json(census: &BTreeMap<u64, num_bigint::BigInt>) -> Vec<JsonCensusEntry> {
    census
        .iter()
        .map(|(&length, count)| JsonCensusEntry { length, count: count.to_string() })
        .collect()
}

pub fn prediction_json(analysis: &Analysis, report: &StructureReport) -> JsonPrediction {
    let field = &analysis.field;
    let graph_label = |v: u32| -> String {
        let vertex = if v as u64 == field.size() {
            crate::ff::ProjVertex::Infinity
        } else {
            crate::ff::ProjVertex::Finite(field.elem_from_index(v as u64))
        };
        field.vertex_label(&vertex)
    };
    let class_json = |cp: &ClassPrediction| -> JsonClassPrediction {
        JsonClassPrediction {
            class: cp.side.name(report.n),
            delta: cp.delta.to_string(),
            delta_norm: analysis.order.norm(&cp.delta).to_string(),
            delta_factors: factors_json(&cp.delta_factors),
            i_c: cp.split.ic.iter().map(JsonFactor::from).collect(),
            i_t: cp.split.it.iter().map(JsonFactor::from).collect(),
            cycle_classes: cp
                .cycle_classes
                .iter()
                .map(|cc| JsonCycleClass {
                    h: cc.h.clone(),
                    n_counts: cc.n_counts.iter().map(|x| x.to_string()).collect(),
                    s_parts: cc.s_parts.clone(),
                    s_prime: cc.s_prime,
                    s: cc.s,
                    count: cc.count.to_string(),
                    excluded: cc.excluded.clone(),
                })
                .collect(),
            predicted_census: census_json(&report.predicted_census(cp.side)),
            tree: JsonTreeShape {
                depth: cp.tree.depth,
                v: cp.tree.v.iter().map(|x| x.to_string()).collect(),
                non_e0_levels: cp.tree.non_e0_levels.iter().map(|x| x.to_string()).collect(),
                e0_roots: cp
                    .tree
                    .e0_root_levels
                    .iter()
                    .map(|(v, levels)| JsonE0Root {
                        vertex: *v,
                        label: graph_label(*v),
                        levels: levels.iter().map(|x| x.to_string()).collect(),
                    })
                    .collect(),
            },
        }
    };
    JsonPrediction {
        alpha: report.alpha.to_string(),
        alpha_factors: factors_json(&report.alpha_factors),
        special_cycles: report
            .e0
            .cycles
            .iter()
            .map(|c| JsonSpecialCycle {
                length: c.length,
                labels: c.members.iter().map(|&v| graph_label(v)).collect(),
            })
            .collect(),
        a: class_json(&report.a),
        b: class_json(&report.b),
    }
}

#[derive(Serialize)]
pub struct JsonBrute {
    pub vertices: usize,
    pub class_sizes: JsonClassSizes,
    pub census_full: Vec<JsonUsizeCensusEntry>,
    pub census_a: Vec<JsonUsizeCensusEntry>,
    pub census_b: Vec<JsonUsizeCensusEntry>,
    pub periodic_vertices: usize,
    /// Distinct tree level-size vectors and how many roots carry each.
    pub tree_shapes: Vec<JsonTreeShapeCount>,
}

#[derive(Serialize)]
pub struct JsonClassSizes {
    pub a: usize,
    pub b: usize,
    pub e0: usize,
}

#[derive(Serialize)]
pub struct JsonUsizeCensusEntry {
    pub length: usize,
    pub count: usize,
}

#[derive(Serialize)]
pub struct JsonTreeShapeCount {
    pub levels: Vec<u64>,
    pub roots: usize,
}

pub fn brute_json(graph: &FunctionalGraph) -> JsonBrute {
    let census = |tag: Option<ClassTag>| -> Vec<JsonUsizeCensusEntry> {
        graph
            .cycle_census(tag)
            .into_iter()
            .map(|(length, count)| JsonUsizeCensusEntry { length, count })
            .collect()
    };
    let (a, b, e0) = graph.class_sizes();
    let mut shape_counts: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for profile in graph.tree_profiles(None).values() {
        *shape_counts.entry(profile.levels.clone()).or_insert(0) += 1;
    }
    JsonBrute {
        vertices: graph.size(),
        class_sizes: JsonClassSizes { a, b, e0 },
        census_full: census(None),
        census_a: census(Some(ClassTag::A)),
        census_b: census(Some(ClassTag::B)),
        periodic_vertices: graph.periodic_vertices().count(),
        tree_shapes: shape_counts
            .into_iter()
            .map(|(levels, roots)| JsonTreeShapeCount { levels, roots })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct JsonReconcileItem {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Serialize)]
pub struct JsonReconcile {
    pub verdict: &'static str,
    pub items: Vec<JsonReconcileItem>,
}

pub fn reconcile_json(rec: &ReconcileReport) -> JsonReconcile {
    JsonReconcile {
        verdict: if rec.passed { "pass" } else { "fail" },
        items: rec
            .items
            .iter()
            .map(|i| JsonReconcileItem {
                name: i.name.clone(),
                passed: i.passed,
                expected: i.expected.clone(),
                actual: i.actual.clone(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct JsonValidation {
    pub verdict: String,
    pub map_degree: usize,
    pub rep_norm: String,
    pub degree_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_pi_coordinates: Option<(i64, i64)>,
    pub sampled_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_check_ok: Option<bool>,
}

#[derive(Serialize)]
pub struct JsonHeader {
    pub p: u64,
    pub s: u32,
    pub n: u32,
    pub q: u64,
    pub graph_order: u64,
    pub working_modulus: Vec<u64>,
    pub m: u64,
    pub trace: i64,
    pub d: i64,
    pub f0: u64,
    pub pi: String,
    pub validation: JsonValidation,
    pub warnings: Vec<String>,
}

pub fn header_json(analysis: &Analysis) -> JsonHeader {
    JsonHeader {
        p: analysis.config.p,
        s: analysis.config.s,
        n: analysis.config.n,
        q: analysis.curve.q_base(),
        graph_order: analysis.field.size() + 1,
        working_modulus: analysis.field.modulus().to_vec(),
        m: analysis.m,
        trace: analysis.trace,
        d: analysis.order.d(),
        f0: analysis.f0,
        pi: analysis.pi.to_string(),
        validation: JsonValidation {
            verdict: analysis.validation.verdict.to_string(),
            map_degree: analysis.validation.map_degree,
            rep_norm: analysis.validation.rep_norm.to_string(),
            degree_ok: analysis.validation.degree_ok,
            z_pi_coordinates: analysis.validation.in_z_pi,
            sampled_points: analysis.validation.sampled_points,
            point_check_ok: analysis.validation.point_check_ok,
        },
        warnings: analysis.warnings.clone(),
    }
}

#[derive(Serialize)]
pub struct JsonReport {
    pub header: JsonHeader,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<JsonPrediction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<JsonBrute>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconcile: Option<JsonReconcile>,
}

/// Plain-text census table for the `census` subcommand.
pub fn census_text(graph: &FunctionalGraph, restrict: Option<ClassTag>) -> String {
    let mut out = String::new();
    let class_name = match restrict {
        None => "all",
        Some(ClassTag::A) => "A",
        Some(ClassTag::B) => "B",
        Some(ClassTag::E0) => "E0",
    };
    out.push_str(&format!("cycle census (class: {class_name})\n"));
    out.push_str("  length   cycles\n");
    for (length, count) in graph.cycle_census(restrict) {
        out.push_str(&format!("  {length:>6}   {count}\n"));
    }
    let mut shape_counts: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for (root, profile) in graph.tree_profiles(restrict) {
        if match restrict {
            None => true,
            Some(tag) => graph.class_flags(root).has(tag),
        } {
            *shape_counts.entry(profile.levels.clone()).or_insert(0) += 1;
        }
    }
    out.push_str("tree shapes (levels -> roots)\n");
    for (levels, roots) in shape_counts {
        let shape = if levels.is_empty() {
            "trivial".to_string()
        } else {
            format!(
                "({})",
                levels.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            )
        };
        out.push_str(&format!("  {shape:<24} {roots}\n"));
    }
    out
}
