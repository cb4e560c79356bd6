//! The input graph: control-adjacency edges between nodes for one maximum
//! matching, and the possible-input / redundant classification it yields.
//!
//! Node `a` is control adjacent to node `b` through witness `c` when `(c, a)`
//! is an unmatched edge and `(c, b)` a matched one; an input node `a` can
//! then take `b`'s place in a new minimum input set. The input graph is
//! built in two passes:
//!
//! * a breadth-first closure from the input nodes, collecting the edges
//!   among possible input nodes;
//! * a scan over the remaining (redundant) nodes, collecting the edges that
//!   point at each of them through its matched predecessor.
//!
//! Control-adjacent pairs joining a redundant node to a possible input node
//! do exist, but neither pass produces them and they are not part of the
//! graph.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedNetwork, NodeId};
use crate::matching::{input_nodes, is_maximum, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ControlAdjacencyEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub witness: NodeId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    /// Between possible input nodes.
    Di,
    /// Between redundant nodes.
    Dr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NodeClass {
    /// Appears in at least one minimum input set; `critical` when it appears
    /// in all of them.
    PossibleInput { critical: bool },
    /// Appears in no minimum input set.
    Redundant,
}

impl NodeClass {
    pub fn is_possible_input(self) -> bool {
        matches!(self, NodeClass::PossibleInput { .. })
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeClass::PossibleInput { critical: true } => "critical",
            NodeClass::PossibleInput { critical: false } => "possible",
            NodeClass::Redundant => "redundant",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InputGraph {
    node_count: usize,
    di: Vec<ControlAdjacencyEdge>,
    dr: Vec<ControlAdjacencyEdge>,
    possible: Vec<bool>,
    critical: Vec<bool>,
    matching: Matching,
    /// Deduplicated forward adjacency over both edge sets, sorted.
    forward: Vec<Vec<NodeId>>,
}

impl InputGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Edges among possible input nodes, in discovery order.
    pub fn di_edges(&self) -> &[ControlAdjacencyEdge] {
        &self.di
    }

    /// Edges among redundant nodes, in discovery order.
    pub fn dr_edges(&self) -> &[ControlAdjacencyEdge] {
        &self.dr
    }

    pub fn edges(&self) -> impl Iterator<Item = (Phase, &ControlAdjacencyEdge)> {
        self.di.iter().map(|e| (Phase::Di, e)).chain(self.dr.iter().map(|e| (Phase::Dr, e)))
    }

    pub fn edge_count(&self) -> usize {
        self.di.len() + self.dr.len()
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn is_possible_input(&self, v: NodeId) -> bool {
        self.possible[v.index()]
    }

    /// The possible-input set, in id order.
    pub fn possible_inputs(&self) -> Vec<NodeId> {
        (0..self.node_count).map(NodeId::from).filter(|&v| self.possible[v.index()]).collect()
    }

    /// Distinct control-adjacent successors of `v`.
    pub fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.forward[v.index()]
    }

    pub fn class(&self, v: NodeId) -> NodeClass {
        if self.possible[v.index()] {
            NodeClass::PossibleInput { critical: self.critical[v.index()] }
        } else {
            NodeClass::Redundant
        }
    }
}

/// Builds the input graph of `net` for the maximum matching `m`.
///
/// Runs in `O(N + L)` after the maximality check.
pub fn build_input_graph(net: &DirectedNetwork, m: &Matching) -> Result<InputGraph> {
    if m.node_count() != net.node_count() {
        return Err(Error::InvalidMatching("matching and network sizes differ".into()));
    }
    if !is_maximum(net, m) {
        return Err(Error::NotMaximum);
    }
    let n = net.node_count();
    let mut possible = vec![false; n];
    let mut di = Vec::new();

    let mut queue: VecDeque<NodeId> = input_nodes(net, m).nodes.into_iter().collect();
    for &v in &queue {
        possible[v.index()] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &c in net.in_neighbors(v) {
            let Some(b) = m.matched_out(c) else { continue };
            if b == v {
                continue;
            }
            di.push(ControlAdjacencyEdge { from: v, to: b, witness: c });
            if !possible[b.index()] {
                possible[b.index()] = true;
                queue.push_back(b);
            }
        }
    }

    let mut dr = Vec::new();
    for v in net.nodes().filter(|v| !possible[v.index()]) {
        let pred = m.matched_in(v).ok_or_else(|| {
            Error::InvariantViolation(format!("redundant node {v} has no matched in-edge"))
        })?;
        for &c in net.out_neighbors(pred) {
            if c != v {
                dr.push(ControlAdjacencyEdge { from: c, to: v, witness: pred });
            }
        }
    }

    let mut forward = vec![Vec::new(); n];
    for e in di.iter().chain(&dr) {
        forward[e.from.index()].push(e.to);
    }
    for list in &mut forward {
        list.sort_unstable();
        list.dedup();
    }
    let critical = net.nodes().map(|v| net.in_degree(v) == 0).collect();

    Ok(InputGraph { node_count: n, di, dr, possible, critical, matching: m.clone(), forward })
}

/// Per-node classes indexed by node id.
pub fn classify_nodes(ig: &InputGraph) -> Vec<NodeClass> {
    (0..ig.node_count).map(|i| ig.class(NodeId::from(i))).collect()
}

/// Forward closure of `n` over the input graph, `n` included, in id order.
pub fn control_reachable_from(ig: &InputGraph, n: NodeId) -> Vec<NodeId> {
    let mut seen = vec![false; ig.node_count];
    reach_into(ig, n, &mut seen)
}

pub(crate) fn reach_into(ig: &InputGraph, n: NodeId, seen: &mut [bool]) -> Vec<NodeId> {
    let mut out = vec![n];
    seen[n.index()] = true;
    let mut head = 0;
    while head < out.len() {
        let v = out[head];
        head += 1;
        for &w in ig.successors(v) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                out.push(w);
            }
        }
    }
    for &v in &out {
        seen[v.index()] = false;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::maximum_matching;

    fn net(text: &str) -> DirectedNetwork {
        DirectedNetwork::load_edge_list(text).unwrap()
    }

    fn id(net: &DirectedNetwork, label: &str) -> NodeId {
        net.node_by_label(label).unwrap()
    }

    fn edge(net: &DirectedNetwork, from: &str, to: &str, witness: &str) -> ControlAdjacencyEdge {
        ControlAdjacencyEdge { from: id(net, from), to: id(net, to), witness: id(net, witness) }
    }

    fn matching(net: &DirectedNetwork, pairs: &[(&str, &str)]) -> Matching {
        Matching::from_pairs(net, pairs.iter().map(|&(s, d)| (id(net, s), id(net, d)))).unwrap()
    }

    #[test]
    fn dilation() {
        let g = net("c a\nc b");
        let ig = build_input_graph(&g, &matching(&g, &[("c", "b")])).unwrap();
        assert_eq!(ig.di_edges(), [edge(&g, "a", "b", "c")]);
        assert!(ig.dr_edges().is_empty());
        assert_eq!(ig.possible_inputs().len(), 3);
        let classes = classify_nodes(&ig);
        assert_eq!(classes[id(&g, "c").index()], NodeClass::PossibleInput { critical: true });
        assert_eq!(classes[id(&g, "a").index()], NodeClass::PossibleInput { critical: false });
        assert_eq!(classes[id(&g, "b").index()], NodeClass::PossibleInput { critical: false });
        let mut reach = control_reachable_from(&ig, id(&g, "a"));
        reach.sort_by_key(|&v| g.label(v).to_owned());
        assert_eq!(reach, [id(&g, "a"), id(&g, "b")]);
    }

    #[test]
    fn path_has_no_control_adjacency() {
        let g = net("1 2\n2 3\n3 4");
        let ig = build_input_graph(&g, &matching(&g, &[("1", "2"), ("2", "3"), ("3", "4")])).unwrap();
        assert_eq!(ig.edge_count(), 0);
        assert_eq!(ig.possible_inputs(), [id(&g, "1")]);
        let classes = classify_nodes(&ig);
        assert_eq!(classes[0], NodeClass::PossibleInput { critical: true });
        assert!(classes[1..].iter().all(|&c| c == NodeClass::Redundant));
        assert_eq!(control_reachable_from(&ig, id(&g, "3")), [id(&g, "3")]);
    }

    #[test]
    fn cross_class_pair_is_excluded() {
        // a -> b through c1 satisfies the pairwise definition but joins a
        // redundant node to a possible input node.
        let g = net("c1 u\nc1 b\nc1 a\nw a");
        let ig = build_input_graph(&g, &matching(&g, &[("c1", "b"), ("w", "a")])).unwrap();
        assert_eq!(ig.di_edges(), [edge(&g, "u", "b", "c1")]);
        assert!(ig.dr_edges().is_empty());
        let mut vpd: Vec<&str> = ig.possible_inputs().into_iter().map(|v| g.label(v)).collect();
        vpd.sort_unstable();
        assert_eq!(vpd, ["b", "c1", "u", "w"]);
        assert_eq!(ig.class(id(&g, "a")), NodeClass::Redundant);
        assert!(!ig.edges().any(|(_, e)| e == &edge(&g, "a", "b", "c1")));
        let mut reach: Vec<&str> = control_reachable_from(&ig, id(&g, "u")).into_iter().map(|v| g.label(v)).collect();
        reach.sort_unstable();
        assert_eq!(reach, ["b", "u"]);
    }

    #[test]
    fn confluence() {
        let g = net("1 3\n2 3");
        let ig = build_input_graph(&g, &maximum_matching(&g, 0)).unwrap();
        let classes = classify_nodes(&ig);
        assert_eq!(classes[id(&g, "1").index()], NodeClass::PossibleInput { critical: true });
        assert_eq!(classes[id(&g, "2").index()], NodeClass::PossibleInput { critical: true });
        assert_eq!(classes[id(&g, "3").index()], NodeClass::Redundant);
    }

    #[test]
    fn redundant_side_edges() {
        // 1 -> 2 -> 3, 2 -> 4, 5 -> 4 : with (2,3) and (5,4) matched, node 4
        // is control adjacent to 3 via witness 2.
        let g = net("1 2\n2 3\n2 4\n5 4");
        let m = matching(&g, &[("1", "2"), ("2", "3"), ("5", "4")]);
        let ig = build_input_graph(&g, &m).unwrap();
        assert!(ig.di_edges().is_empty());
        assert_eq!(ig.dr_edges(), [edge(&g, "4", "3", "2")]);
    }

    #[test]
    fn rejects_non_maximum_matching() {
        let g = net("c a\nc b");
        assert!(matches!(build_input_graph(&g, &Matching::empty(3)), Err(Error::NotMaximum)));
    }

    #[test]
    fn isolated_node_reaches_itself() {
        let g = DirectedNetwork::from_edges(3, [(NodeId(0), NodeId(1))]).unwrap();
        let ig = build_input_graph(&g, &maximum_matching(&g, 0)).unwrap();
        assert_eq!(control_reachable_from(&ig, NodeId(2)), [NodeId(2)]);
    }
}
