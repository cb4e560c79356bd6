//! Report records and batch drivers behind the `ctrlnet` binary.
//!
//! Records serialize through `serde_json::Value`, whose maps keep keys
//! sorted, so identical inputs give byte-identical output.

use std::collections::BTreeMap;

use ctrlnet::alteration::{AlterationPlan, Rationale, Transition};
use ctrlnet::generators::{generate, GenSpec, Model};
use ctrlnet::report::{percent, ratio};
use ctrlnet::{Analysis, ComponentKind, DirectedNetwork, NodeId};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

/// Member lists are left out above this many nodes unless asked for.
pub const MEMBER_LIST_LIMIT: usize = 10_000;

pub fn show_members(net: &DirectedNetwork, forced: bool) -> bool {
    forced || net.node_count() <= MEMBER_LIST_LIMIT
}

fn labels(net: &DirectedNetwork, nodes: &[NodeId]) -> Vec<String> {
    nodes.iter().map(|&v| net.label(v).to_owned()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisRecord {
    pub nodes: usize,
    pub edges: usize,
    pub avg_degree: f64,
    pub self_loops: usize,
    pub duplicates_collapsed: usize,
    pub seed: u64,
    pub matching_size: usize,
    pub mis_size: usize,
    /// Percent of nodes that are input nodes.
    pub n_mis: f64,
    /// Fraction of possible input nodes.
    pub n_p: f64,
    pub possible_inputs: usize,
    pub critical: usize,
    pub redundant: usize,
    /// `xx.xx%(K)` with K the kind letter.
    pub cc_max: String,
    pub cc_max_fraction: f64,
    pub cc_max_kind: ComponentKind,
    pub component_count: usize,
    pub components_by_kind: BTreeMap<ComponentKind, usize>,
    /// Percent of nodes in the largest component of each kind present.
    pub largest_by_kind: BTreeMap<ComponentKind, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<BTreeMap<String, &'static str>>,
}

impl AnalysisRecord {
    pub fn new(net: &DirectedNetwork, a: &Analysis, seed: u64, members: bool) -> Self {
        let r = &a.report;
        let n = net.node_count() as f64;
        let count = |f: &dyn Fn(ctrlnet::NodeClass) -> bool| a.classes.iter().filter(|&&c| f(c)).count();
        let possible = a.possible_input_count();
        AnalysisRecord {
            nodes: r.nodes,
            edges: r.edges,
            avg_degree: ratio(r.avg_degree),
            self_loops: net.self_loop_count(),
            duplicates_collapsed: net.duplicates_collapsed(),
            seed,
            matching_size: r.matching_size,
            mis_size: a.mis_size(),
            n_mis: percent(r.n_mis),
            n_p: ratio(possible as f64 / n),
            possible_inputs: possible,
            critical: count(&|c| matches!(c, ctrlnet::NodeClass::PossibleInput { critical: true })),
            redundant: net.node_count() - possible,
            cc_max: r.table_row().1,
            cc_max_fraction: r.cc_max_ratio(),
            cc_max_kind: r.cc_max_kind,
            component_count: r.components.len(),
            components_by_kind: [ComponentKind::Ic, ComponentKind::Umc, ComponentKind::Smc]
                .into_iter()
                .map(|k| (k, r.count_of(k)))
                .collect(),
            largest_by_kind: r.largest_by_kind().into_iter().map(|(k, c)| (k, percent(c.size() as f64 / n))).collect(),
            mis: members.then(|| labels(net, &a.inputs.nodes)),
            classes: members.then(|| class_map(net, a)),
        }
    }
}

pub fn class_map(net: &DirectedNetwork, a: &Analysis) -> BTreeMap<String, &'static str> {
    net.nodes().map(|v| (net.label(v).to_owned(), a.classes[v.index()].name())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentRecord {
    pub id: usize,
    pub size: usize,
    pub kind: ComponentKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
}

pub fn component_records(net: &DirectedNetwork, a: &Analysis, members: bool) -> Vec<ComponentRecord> {
    a.components()
        .iter()
        .map(|c| ComponentRecord {
            id: c.id,
            size: c.size(),
            kind: c.kind.expect("classified"),
            members: members.then(|| labels(net, &c.members)),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AdditionRecord {
    pub src: String,
    pub dst: String,
    pub rationale: Rationale,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlterRecord {
    pub transition: Transition,
    pub target_component: usize,
    pub target_size: usize,
    pub additions: Vec<AdditionRecord>,
    /// Added edges over the original edge count.
    pub p: f64,
    pub p_percent: f64,
    pub delta_nd: f64,
    pub delta_nd_percent: f64,
    pub changed_nodes: usize,
    pub mis_before: usize,
    pub mis_after: usize,
    pub attained: bool,
    pub kinds_after: Vec<ComponentKind>,
    pub before: AnalysisRecord,
    pub after: AnalysisRecord,
}

impl AlterRecord {
    pub fn new(net: &DirectedNetwork, plan: &AlterationPlan, before: AnalysisRecord, after: AnalysisRecord) -> Self {
        let m = plan.metrics.as_ref().expect("metrics filled");
        AlterRecord {
            transition: plan.transition,
            target_component: plan.target_component,
            target_size: plan.target_members.len(),
            additions: plan
                .additions
                .iter()
                .map(|e| AdditionRecord { src: net.label(e.src).to_owned(), dst: net.label(e.dst).to_owned(), rationale: e.rationale })
                .collect(),
            p: m.p,
            p_percent: percent(m.p),
            delta_nd: m.delta_nd,
            delta_nd_percent: percent(m.delta_nd),
            changed_nodes: m.changed_nodes,
            mis_before: m.mis_before,
            mis_after: m.mis_after,
            attained: m.attained,
            kinds_after: m.kinds_after.clone(),
            before,
            after,
        }
    }
}

/// `src<TAB>dst<TAB>rationale` per added edge.
pub fn additions_tsv(net: &DirectedNetwork, plan: &AlterationPlan) -> String {
    plan.additions
        .iter()
        .map(|e| format!("{}\t{}\t{}\n", net.label(e.src), net.label(e.dst), e.rationale.name()))
        .collect()
}

/// One row of a generate-and-analyse sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub model: Model,
    pub nodes: usize,
    pub k: f64,
    pub seed: u64,
    pub cc_max_frac: f64,
    pub cc_count: usize,
    pub n_p: f64,
    pub cc_kind: ComponentKind,
}

pub const SWEEP_HEADER: &str = "model,N,k,seed,cc_max_frac,cc_count,n_p,cc_kind";

impl SweepRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.model.name(),
            self.nodes,
            self.k,
            self.seed,
            self.cc_max_frac,
            self.cc_count,
            self.n_p,
            self.cc_kind
        )
    }
}

/// Generates and analyses every `(k, seed)` pair in parallel; rows come back
/// in `k`-major, seed-minor order.
pub fn sweep(base: GenSpec, ks: &[f64], seeds: &[u64]) -> ctrlnet::Result<Vec<SweepRow>> {
    let jobs: Vec<(f64, u64)> = ks.iter().flat_map(|&k| seeds.iter().map(move |&s| (k, s))).collect();
    jobs.par_iter()
        .map(|&(k, seed)| {
            let spec = GenSpec { avg_degree: k, seed, ..base };
            let net = generate(&spec)?;
            let a = Analysis::run(&net, 0)?;
            Ok(SweepRow {
                model: spec.model,
                nodes: spec.nodes,
                k,
                seed,
                cc_max_frac: a.report.cc_max_ratio(),
                cc_count: a.components().len(),
                n_p: ratio(a.possible_input_count() as f64 / net.node_count() as f64),
                cc_kind: a.report.cc_max_kind,
            })
        })
        .collect()
}

pub fn to_json<T: Serialize>(record: &T) -> String {
    let value = serde_json::to_value(record).expect("records serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

/// Flattens a record into `key<TAB>value` lines. Nested keys are joined
/// with dots and arrays with commas.
pub fn to_tsv<T: Serialize>(record: &T) -> String {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
            other => other.to_string(),
        }
    }
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                for (i, item) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), item, out);
                }
            }
            other => {
                out.push_str(prefix);
                out.push('\t');
                out.push_str(&scalar(other));
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", &serde_json::to_value(record).expect("records serialize"), &mut out);
    out
}
