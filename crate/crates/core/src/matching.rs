//! Maximum matchings of the bipartite split and the node sets derived from
//! them.
//!
//! An edge `(u, v)` of the network is the bipartite edge between the
//! out-copy of `u` and the in-copy of `v`. Input nodes are the nodes whose
//! in-copy is unmatched; unsaturated nodes are those whose out-copy is
//! unmatched.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedNetwork, NodeId};

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// in-copy `v` -> out-copy `u` for matched edge `(u, v)`.
    matched_in: Vec<Option<NodeId>>,
    /// out-copy `u` -> in-copy `v`.
    matched_out: Vec<Option<NodeId>>,
    size: usize,
}

impl Matching {
    pub fn empty(node_count: usize) -> Self {
        Matching { matched_in: vec![None; node_count], matched_out: vec![None; node_count], size: 0 }
    }

    /// Builds a matching from `(src, dst)` pairs, checking that every pair is
    /// an edge of `net` and that no copy is used twice.
    pub fn from_pairs(net: &DirectedNetwork, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut m = Matching::empty(net.node_count());
        for (s, d) in pairs {
            if !net.has_edge(s, d) {
                return Err(Error::InvalidMatching(format!("({s}, {d}) is not an edge")));
            }
            if m.matched_out[s.index()].is_some() || m.matched_in[d.index()].is_some() {
                return Err(Error::InvalidMatching(format!("({s}, {d}) reuses a matched copy")));
            }
            m.insert(s, d);
        }
        Ok(m)
    }

    fn insert(&mut self, s: NodeId, d: NodeId) {
        self.matched_out[s.index()] = Some(d);
        self.matched_in[d.index()] = Some(s);
        self.size += 1;
    }

    fn remove(&mut self, s: NodeId, d: NodeId) {
        debug_assert_eq!(self.matched_out[s.index()], Some(d));
        self.matched_out[s.index()] = None;
        self.matched_in[d.index()] = None;
        self.size -= 1;
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn node_count(&self) -> usize {
        self.matched_in.len()
    }

    /// Source of the matched edge entering `v`, if any.
    #[inline]
    pub fn matched_in(&self, v: NodeId) -> Option<NodeId> {
        self.matched_in[v.index()]
    }

    /// Target of the matched edge leaving `u`, if any.
    #[inline]
    pub fn matched_out(&self, u: NodeId) -> Option<NodeId> {
        self.matched_out[u.index()]
    }

    pub fn is_matched_edge(&self, s: NodeId, d: NodeId) -> bool {
        self.matched_out[s.index()] == Some(d)
    }

    /// Matched `(src, dst)` pairs sorted by source.
    pub fn pairs(&self) -> Vec<(NodeId, NodeId)> {
        self.matched_out
            .iter()
            .enumerate()
            .filter_map(|(s, d)| d.map(|d| (NodeId::from(s), d)))
            .collect()
    }

    /// Returns a copy extended by matched edges whose endpoints are both
    /// currently free. Used after adding those edges to the network.
    pub fn extended(&self, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut m = self.clone();
        for (s, d) in pairs {
            if m.matched_out[s.index()].is_some() || m.matched_in[d.index()].is_some() {
                return Err(Error::InvalidMatching(format!("({s}, {d}) reuses a matched copy")));
            }
            m.insert(s, d);
        }
        Ok(m)
    }
}

/// Hopcroft–Karp over the full bipartite split.
///
/// `order_seed` permutes the scan order of free out-copies and of each
/// adjacency list; seed 0 scans in node-id order. The size of the result
/// does not depend on the seed.
pub fn maximum_matching(net: &DirectedNetwork, order_seed: u64) -> Matching {
    let n = net.node_count();
    let mut adj: Vec<Vec<u32>> = net.nodes().map(|u| net.out_neighbors(u).iter().map(|v| v.0).collect()).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    if order_seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(order_seed);
        order.shuffle(&mut rng);
        for list in &mut adj {
            list.shuffle(&mut rng);
        }
    }

    let mut mate_out = vec![UNSET; n];
    let mut mate_in = vec![UNSET; n];
    let mut dist = vec![UNSET; n];
    let mut cursor = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut stack: Vec<u32> = Vec::new();
    let mut via: Vec<u32> = Vec::new();

    loop {
        // Layer out-copies by alternating distance from the free ones.
        queue.clear();
        for &u in &order {
            if mate_out[u as usize] == UNSET {
                dist[u as usize] = 0;
                queue.push_back(u);
            } else {
                dist[u as usize] = UNSET;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u as usize] {
                let w = mate_in[v as usize];
                if w == UNSET {
                    found = true;
                } else if dist[w as usize] == UNSET {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }

        cursor.iter_mut().for_each(|c| *c = 0);
        for &root in &order {
            if mate_out[root as usize] != UNSET {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                let ui = u as usize;
                if cursor[ui] < adj[ui].len() {
                    let v = adj[ui][cursor[ui]];
                    cursor[ui] += 1;
                    let w = mate_in[v as usize];
                    if w == UNSET {
                        via.push(v);
                        for (&s, &d) in stack.iter().zip(&via) {
                            mate_out[s as usize] = d;
                            mate_in[d as usize] = s;
                        }
                        break;
                    } else if dist[w as usize] == dist[ui] + 1 {
                        via.push(v);
                        stack.push(w);
                    }
                } else {
                    dist[ui] = UNSET;
                    stack.pop();
                    via.pop();
                }
            }
        }
    }

    let mut m = Matching::empty(n);
    for (u, &v) in mate_out.iter().enumerate() {
        if v != UNSET {
            m.insert(NodeId::from(u), NodeId(v));
        }
    }
    m
}

/// The minimum input-node set produced by a matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputNodeSet {
    pub nodes: Vec<NodeId>,
    /// No input node at all: every in-copy is matched.
    pub perfectly_matched: bool,
}

impl InputNodeSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }
}

/// Nodes whose in-copy is unmatched, in id order.
pub fn input_nodes(net: &DirectedNetwork, m: &Matching) -> InputNodeSet {
    let nodes: Vec<NodeId> = net.nodes().filter(|&v| m.matched_in(v).is_none()).collect();
    InputNodeSet { perfectly_matched: nodes.is_empty(), nodes }
}

/// Nodes whose out-copy is unmatched, in id order.
pub fn unsaturated_nodes(net: &DirectedNetwork, m: &Matching) -> Vec<NodeId> {
    net.nodes().filter(|&v| m.matched_out(v).is_none()).collect()
}

/// Returns an augmenting path, if one exists, as the list of its edges
/// `(src, dst)` in path order. The path starts at an unmatched in-copy,
/// alternates unmatched and matched edges, and ends at an unmatched out-copy.
pub fn find_augmenting_path(net: &DirectedNetwork, m: &Matching) -> Option<Vec<(NodeId, NodeId)>> {
    let n = net.node_count();
    // For a reached matched in-copy w: (out-copy u matched to w, in-copy that reached u).
    let mut parent: Vec<Option<(NodeId, NodeId)>> = vec![None; n];
    let mut seen_in = vec![false; n];
    let mut seen_out = vec![false; n];
    let mut queue = VecDeque::new();
    for v in net.nodes() {
        if m.matched_in(v).is_none() {
            seen_in[v.index()] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &u in net.in_neighbors(v) {
            if seen_out[u.index()] || m.is_matched_edge(u, v) {
                continue;
            }
            seen_out[u.index()] = true;
            match m.matched_out(u) {
                None => {
                    let mut path = vec![(u, v)];
                    let mut cur = v;
                    while let Some((src, prev)) = parent[cur.index()] {
                        path.push((src, cur));
                        path.push((src, prev));
                        cur = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                Some(w) if !seen_in[w.index()] => {
                    seen_in[w.index()] = true;
                    parent[w.index()] = Some((u, v));
                    queue.push_back(w);
                }
                Some(_) => {}
            }
        }
    }
    None
}

/// Berge's criterion: `m` is maximum iff no augmenting path exists.
pub fn is_maximum(net: &DirectedNetwork, m: &Matching) -> bool {
    find_augmenting_path(net, m).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exchange {
    pub matching: Matching,
    /// The node that leaves the matched side and becomes an input node.
    pub replaced: NodeId,
}

/// Swaps input node `n` with the node its in-edge `(witness, n)` points at
/// through the witness's matched out-edge.
pub fn exchange(net: &DirectedNetwork, m: &Matching, n: NodeId, witness: NodeId) -> Result<Exchange> {
    if m.matched_in(n).is_some() {
        return Err(Error::NotInputNode(n));
    }
    if !net.has_edge(witness, n) || m.is_matched_edge(witness, n) {
        return Err(Error::NotUnmatchedInEdge { witness, node: n });
    }
    let b = m.matched_out(witness).ok_or_else(|| {
        Error::InvariantViolation(format!(
            "witness {witness} of input node {n} has no matched out-edge; the matching is not maximum"
        ))
    })?;
    let mut next = m.clone();
    next.remove(witness, b);
    next.insert(witness, n);
    Ok(Exchange { matching: next, replaced: b })
}
