//! Exhaustive ground truth for small networks.
//!
//! Enumerates every maximum matching by backtracking over in-copies and
//! derives node classes from the resulting minimum input sets, without
//! touching the matching or input-graph code paths.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{DirectedNetwork, NodeId};
use crate::input_graph::NodeClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleGuard {
    pub max_nodes: usize,
    /// Upper bound on enumerated maximum matchings.
    pub max_count: u64,
    /// Upper bound on backtracking steps across both passes.
    pub max_steps: u64,
}

impl Default for OracleGuard {
    fn default() -> Self {
        OracleGuard { max_nodes: 16, max_count: 1_000_000, max_steps: 200_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub matching_size: usize,
    pub matching_count: u64,
    /// Distinct minimum input sets, each sorted, in lexicographic order.
    pub mis_list: Vec<Vec<NodeId>>,
    pub in_some_mis: Vec<bool>,
    pub in_all_mis: Vec<bool>,
}

struct Search<'a> {
    net: &'a DirectedNetwork,
    guard: OracleGuard,
    steps: u64,
    out_used: Vec<bool>,
    /// in-copy -> matched out-copy
    assign: Vec<Option<NodeId>>,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.guard.max_steps {
            return Err(Error::OracleInfeasible(format!("more than {} search steps", self.guard.max_steps)));
        }
        Ok(())
    }

    /// In-copies from `from` on that still have a free out-neighbour.
    fn bound(&self, from: usize) -> usize {
        (from..self.net.node_count())
            .filter(|&v| self.net.in_neighbors(NodeId::from(v)).iter().any(|u| !self.out_used[u.index()]))
            .count()
    }

    fn best(&mut self, v: usize, size: usize, best: &mut usize) -> Result<()> {
        self.tick()?;
        if size > *best {
            *best = size;
        }
        if v == self.net.node_count() || size + self.bound(v) <= *best {
            return Ok(());
        }
        let net = self.net;
        for &u in net.in_neighbors(NodeId::from(v)) {
            if !self.out_used[u.index()] {
                self.out_used[u.index()] = true;
                self.best(v + 1, size + 1, best)?;
                self.out_used[u.index()] = false;
            }
        }
        self.best(v + 1, size, best)
    }

    fn all(&mut self, v: usize, size: usize, target: usize, visit: &mut dyn FnMut(&[Option<NodeId>]) -> Result<()>) -> Result<()> {
        self.tick()?;
        if v == self.net.node_count() {
            if size == target {
                visit(&self.assign)?;
            }
            return Ok(());
        }
        if size + self.bound(v) < target {
            return Ok(());
        }
        let net = self.net;
        for &u in net.in_neighbors(NodeId::from(v)) {
            if !self.out_used[u.index()] {
                self.out_used[u.index()] = true;
                self.assign[v] = Some(u);
                self.all(v + 1, size + 1, target, visit)?;
                self.assign[v] = None;
                self.out_used[u.index()] = false;
            }
        }
        self.all(v + 1, size, target, visit)
    }
}

/// Calls `visit` with every maximum matching, given as the matched out-copy
/// of each in-copy. Returns the matching number.
pub fn for_each_maximum_matching(
    net: &DirectedNetwork,
    guard: OracleGuard,
    mut visit: impl FnMut(&[Option<NodeId>]),
) -> Result<usize> {
    let n = net.node_count();
    if n > guard.max_nodes {
        return Err(Error::OracleInfeasible(format!("{n} nodes exceeds the limit of {}", guard.max_nodes)));
    }
    let mut search = Search { net, guard, steps: 0, out_used: vec![false; n], assign: vec![None; n] };
    let mut best = 0;
    search.best(0, 0, &mut best)?;
    let mut count = 0u64;
    search.all(0, 0, best, &mut |assign| {
        count += 1;
        if count > guard.max_count {
            return Err(Error::OracleInfeasible(format!("more than {} maximum matchings", guard.max_count)));
        }
        visit(assign);
        Ok(())
    })?;
    Ok(best)
}

pub fn enumerate_maximum_matchings(net: &DirectedNetwork, guard: OracleGuard) -> Result<EnumerationResult> {
    let n = net.node_count();
    let mut count = 0u64;
    let mut sets: BTreeSet<Vec<NodeId>> = BTreeSet::new();
    let size = for_each_maximum_matching(net, guard, |assign| {
        count += 1;
        sets.insert((0..n).filter(|&v| assign[v].is_none()).map(NodeId::from).collect());
    })?;
    let mut in_some = vec![false; n];
    let mut in_all = vec![true; n];
    for set in &sets {
        let mut mark = vec![false; n];
        for v in set {
            mark[v.index()] = true;
            in_some[v.index()] = true;
        }
        for v in 0..n {
            in_all[v] &= mark[v];
        }
    }
    Ok(EnumerationResult {
        matching_size: size,
        matching_count: count,
        mis_list: sets.into_iter().collect(),
        in_some_mis: in_some,
        in_all_mis: in_all,
    })
}

/// Node classes from the enumerated minimum input sets.
pub fn classify_exhaustive(net: &DirectedNetwork, guard: OracleGuard) -> Result<Vec<NodeClass>> {
    let r = enumerate_maximum_matchings(net, guard)?;
    let mut out = Vec::with_capacity(net.node_count());
    for v in net.nodes() {
        let (some, all) = (r.in_some_mis[v.index()], r.in_all_mis[v.index()]);
        if all != (net.in_degree(v) == 0) {
            return Err(Error::InvariantViolation(format!(
                "node {v} in every MIS = {all} but in-degree {}",
                net.in_degree(v)
            )));
        }
        out.push(if some { NodeClass::PossibleInput { critical: all } } else { NodeClass::Redundant });
    }
    Ok(out)
}

/// Shape of one connected piece of the symmetric difference of two
/// matchings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffPiece {
    /// Alternating path with this many edges.
    Path(usize),
    /// Alternating cycle with this (even) number of edges.
    Cycle(usize),
}

/// Decomposes `a △ b` (each given as `(src, dst)` pairs) over the bipartite
/// split. Fails if a copy meets two edges of the same matching or a cycle
/// has odd length.
pub fn symmetric_difference(
    node_count: usize,
    a: &[(NodeId, NodeId)],
    b: &[(NodeId, NodeId)],
) -> std::result::Result<Vec<DiffPiece>, String> {
    let sa: BTreeSet<_> = a.iter().copied().collect();
    let sb: BTreeSet<_> = b.iter().copied().collect();
    // vertices: out-copy u -> u, in-copy v -> node_count + v
    let mut adj: Vec<[Option<usize>; 2]> = vec![[None, None]; 2 * node_count];
    let mut add = |x: usize, y: usize, side: usize| -> std::result::Result<(), String> {
        for z in [x, y] {
            if adj[z][side].is_some() {
                return Err(format!("copy {z} has two edges from matching {side}"));
            }
        }
        adj[x][side] = Some(y);
        adj[y][side] = Some(x);
        Ok(())
    };
    for &(s, d) in sa.difference(&sb) {
        add(s.index(), node_count + d.index(), 0)?;
    }
    for &(s, d) in sb.difference(&sa) {
        add(s.index(), node_count + d.index(), 1)?;
    }
    let degree = |x: usize| adj[x].iter().flatten().count();
    let mut seen = vec![false; 2 * node_count];
    let mut pieces = Vec::new();
    // paths first, walked from an endpoint
    for start in 0..2 * node_count {
        if seen[start] || degree(start) != 1 {
            continue;
        }
        let (mut cur, mut edges) = (start, 0);
        let mut side = if adj[start][0].is_some() { 0 } else { 1 };
        seen[start] = true;
        while let Some(next) = adj[cur][side] {
            edges += 1;
            seen[next] = true;
            cur = next;
            side ^= 1;
        }
        pieces.push(DiffPiece::Path(edges));
    }
    for start in 0..2 * node_count {
        if seen[start] || degree(start) == 0 {
            continue;
        }
        let (mut cur, mut edges, mut side) = (start, 0, 0);
        seen[start] = true;
        loop {
            let next = adj[cur][side].ok_or("broken cycle")?;
            edges += 1;
            side ^= 1;
            if next == start {
                break;
            }
            seen[next] = true;
            cur = next;
        }
        if edges % 2 != 0 {
            return Err(format!("odd cycle of length {edges}"));
        }
        pieces.push(DiffPiece::Cycle(edges));
    }
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(net: &DirectedNetwork, r: &EnumerationResult) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = r
            .mis_list
            .iter()
            .map(|s| {
                let mut l: Vec<String> = s.iter().map(|&v| net.label(v).to_owned()).collect();
                l.sort();
                l
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn dilation_has_two_minimum_input_sets() {
        let net = DirectedNetwork::load_edge_list("c a\nc b").unwrap();
        let r = enumerate_maximum_matchings(&net, OracleGuard::default()).unwrap();
        assert_eq!(r.matching_count, 2);
        assert_eq!(r.matching_size, 1);
        assert_eq!(sets(&net, &r), [["a", "c"], ["b", "c"]]);
        let classes = classify_exhaustive(&net, OracleGuard::default()).unwrap();
        assert_eq!(classes[0], NodeClass::PossibleInput { critical: true });
        assert_eq!(classes[1], NodeClass::PossibleInput { critical: false });
        assert_eq!(classes[2], NodeClass::PossibleInput { critical: false });
    }

    #[test]
    fn path_has_a_single_matching() {
        let net = DirectedNetwork::load_edge_list("1 2\n2 3").unwrap();
        let r = enumerate_maximum_matchings(&net, OracleGuard::default()).unwrap();
        assert_eq!(r.matching_count, 1);
        assert_eq!(sets(&net, &r), [["1"]]);
    }

    #[test]
    fn cross_class_network() {
        let net = DirectedNetwork::load_edge_list("c1 u\nc1 b\nc1 a\nw a").unwrap();
        let r = enumerate_maximum_matchings(&net, OracleGuard::default()).unwrap();
        assert_eq!(sets(&net, &r), [vec!["b", "c1", "w"], vec!["c1", "u", "w"]]);
        let a = net.node_by_label("a").unwrap();
        assert!(!r.in_some_mis[a.index()]);
    }

    #[test]
    fn guard_is_a_hard_error() {
        let net = DirectedNetwork::from_edges(17, []).unwrap();
        assert!(matches!(
            enumerate_maximum_matchings(&net, OracleGuard::default()),
            Err(Error::OracleInfeasible(_))
        ));
        // complete digraph on 6 nodes has 265 perfect matchings (derangements)
        let edges = (0..6u32).flat_map(|u| (0..6u32).filter(move |&v| v != u).map(move |v| (NodeId(u), NodeId(v))));
        let k6 = DirectedNetwork::from_edges(6, edges).unwrap();
        let r = enumerate_maximum_matchings(&k6, OracleGuard::default()).unwrap();
        assert_eq!(r.matching_count, 265);
        let tight = OracleGuard { max_count: 100, ..OracleGuard::default() };
        assert!(matches!(enumerate_maximum_matchings(&k6, tight), Err(Error::OracleInfeasible(_))));
    }

    #[test]
    fn symmetric_difference_pieces() {
        let n = |i: u32| NodeId(i);
        // dilation: {(c,a)} vs {(c,b)} -> one path of two edges
        let pieces = symmetric_difference(3, &[(n(0), n(1))], &[(n(0), n(2))]).unwrap();
        assert_eq!(pieces, [DiffPiece::Path(2)]);
        // 2-cycle 0<->1 plus self-loops on both: {(0,1),(1,0)} vs {(0,0),(1,1)}
        let pieces = symmetric_difference(2, &[(n(0), n(1)), (n(1), n(0))], &[(n(0), n(0)), (n(1), n(1))]).unwrap();
        assert_eq!(pieces, [DiffPiece::Cycle(4)]);
        assert!(symmetric_difference(2, &[(n(0), n(1)), (n(0), n(0))], &[]).is_err());
    }
}
