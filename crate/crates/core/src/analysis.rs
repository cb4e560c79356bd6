//! The full pipeline on one network: matching, input graph, node classes and
//! control components.

use crate::components::{component_report, ComponentKind, ComponentReport, ControlComponent};
use crate::error::{Error, Result};
use crate::graph::{DirectedNetwork, NodeId};
use crate::input_graph::{build_input_graph, classify_nodes, InputGraph, NodeClass};
use crate::matching::{input_nodes, maximum_matching, unsaturated_nodes, InputNodeSet, Matching};

#[derive(Clone, Debug)]
pub struct Analysis {
    pub matching: Matching,
    pub inputs: InputNodeSet,
    pub unsaturated: Vec<NodeId>,
    pub input_graph: InputGraph,
    pub classes: Vec<NodeClass>,
    pub report: ComponentReport,
    component_of: Vec<usize>,
}

impl Analysis {
    /// Runs the pipeline with the maximum matching for `order_seed`.
    pub fn run(net: &DirectedNetwork, order_seed: u64) -> Result<Self> {
        if net.node_count() == 0 {
            return Err(Error::EmptyNetwork);
        }
        Self::with_matching(net, maximum_matching(net, order_seed))
    }

    pub fn with_matching(net: &DirectedNetwork, matching: Matching) -> Result<Self> {
        let input_graph = build_input_graph(net, &matching)?;
        let classes = classify_nodes(&input_graph);
        let report = component_report(net, &matching, &input_graph)?;
        let mut component_of = vec![0; net.node_count()];
        for c in &report.components {
            for &v in &c.members {
                component_of[v.index()] = c.id;
            }
        }
        Ok(Analysis {
            inputs: input_nodes(net, &matching),
            unsaturated: unsaturated_nodes(net, &matching),
            matching,
            input_graph,
            classes,
            report,
            component_of,
        })
    }

    pub fn node_count(&self) -> usize {
        self.classes.len()
    }

    pub fn components(&self) -> &[ControlComponent] {
        &self.report.components
    }

    pub fn component(&self, id: usize) -> Result<&ControlComponent> {
        self.report.components.get(id).ok_or(Error::UnknownComponent(id))
    }

    pub fn component_of(&self, v: NodeId) -> &ControlComponent {
        &self.report.components[self.component_of[v.index()]]
    }

    pub fn kind_of(&self, v: NodeId) -> ComponentKind {
        self.component_of(v).kind.expect("classified")
    }

    pub fn mis_size(&self) -> usize {
        self.inputs.len()
    }

    pub fn possible_input_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_possible_input()).count()
    }

    /// Largest component whose kind satisfies `pred`, ties to the smallest id.
    pub fn largest_where(&self, pred: impl Fn(ComponentKind) -> bool) -> Option<&ControlComponent> {
        self.report
            .components
            .iter()
            .filter(|c| c.kind.is_some_and(&pred))
            .min_by_key(|c| (std::cmp::Reverse(c.size()), c.id))
    }

    /// Checks the structural invariants every analysis must satisfy and
    /// returns a description of each violation.
    pub fn violations(&self, net: &DirectedNetwork) -> Vec<String> {
        let mut out = Vec::new();
        let ig = &self.input_graph;
        for (phase, e) in ig.edges() {
            let (a, b) = (self.classes[e.from.index()], self.classes[e.to.index()]);
            if a.is_possible_input() != b.is_possible_input() {
                out.push(format!("{phase:?} edge {}->{} joins {} and {}", e.from, e.to, a.name(), b.name()));
            }
        }
        if ig.edge_count() > net.edge_count() {
            out.push(format!("input graph has {} edges, network only {}", ig.edge_count(), net.edge_count()));
        }
        let total: usize = self.report.components.iter().map(|c| c.size()).sum();
        if total != net.node_count() {
            out.push(format!("component sizes sum to {total}, N = {}", net.node_count()));
        }
        for c in &self.report.components {
            let kind = c.kind.expect("classified");
            let linked = c
                .members
                .iter()
                .any(|&x| net.in_neighbors(x).iter().any(|&u| self.matching.matched_out(u).is_none()));
            if kind == ComponentKind::Ic && linked {
                out.push(format!("IC {} is linked by an unsaturated node", c.id));
            }
            for &v in &c.members {
                if self.classes[v.index()].is_possible_input() == kind.is_matched() {
                    out.push(format!("node {v} is {} inside {kind} {}", self.classes[v.index()].name(), c.id));
                }
            }
        }
        for v in net.nodes() {
            let critical = matches!(self.classes[v.index()], NodeClass::PossibleInput { critical: true });
            if critical != (net.in_degree(v) == 0) {
                out.push(format!("node {v}: critical flag disagrees with in-degree {}", net.in_degree(v)));
            }
        }
        if self.inputs.len() != net.node_count() - self.matching.size()
            || self.unsaturated.len() != self.inputs.len()
        {
            out.push("input/unsaturated counts disagree with N - |M|".into());
        }
        out
    }
}
