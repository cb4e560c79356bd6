//! Directed networks, the edge-list file format and the bipartite split.
//!
//! Nodes carry dense ids in `[0, N)` assigned in first-appearance order when
//! a network is loaded. Duplicate edges are collapsed; self-loops are kept
//! and counted.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense node index in `[0, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    #[inline]
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Prefix of the comment line that declares a node explicitly. Other tools
/// treat it as an ordinary comment.
pub const NODE_PRAGMA: &str = "#@node";

/// An immutable simple digraph with a label table.
#[derive(Clone, Debug)]
pub struct DirectedNetwork {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    /// Sorted by `(src, dst)`, no duplicates.
    edges: Vec<(NodeId, NodeId)>,
    out_adj: Vec<Vec<NodeId>>,
    in_adj: Vec<Vec<NodeId>>,
    self_loops: usize,
    duplicates_collapsed: usize,
}

impl DirectedNetwork {
    /// Builds a network over `node_count` nodes labelled by their ids.
    pub fn from_edges(node_count: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a network from an explicit label table; labels must be unique.
    pub fn with_labels(labels: Vec<String>, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), NodeId::from(i)).is_some() {
                return Err(Error::Parse { line: 0, message: format!("duplicate node label {label:?}") });
            }
        }
        let mut edges: Vec<_> = edges.into_iter().collect();
        for &(s, d) in &edges {
            if s.index() >= n || d.index() >= n {
                return Err(Error::InvalidEdge { src: s, dst: d, reason: "endpoint out of range" });
            }
        }
        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        let duplicates_collapsed = before - edges.len();

        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut self_loops = 0;
        for &(s, d) in &edges {
            out_adj[s.index()].push(d);
            in_adj[d.index()].push(s);
            if s == d {
                self_loops += 1;
            }
        }
        // out_adj is sorted by construction; in_adj too since edges are sorted by src.
        Ok(DirectedNetwork { labels, index, edges, out_adj, in_adj, self_loops, duplicates_collapsed })
    }

    /// Parses the whitespace-separated edge-list format.
    ///
    /// Lines starting with `#` are comments, except `#@node <label>` which
    /// declares a node (used to carry isolated nodes and id order through a
    /// round trip).
    pub fn load_edge_list(text: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let mut edges = Vec::new();

        let mut intern = |label: &str, labels: &mut Vec<String>| -> NodeId {
            if let Some(&id) = index.get(label) {
                return id;
            }
            let id = NodeId::from(labels.len());
            labels.push(label.to_owned());
            index.insert(label.to_owned(), id);
            id
        };

        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix(NODE_PRAGMA) {
                let mut tokens = rest.split_whitespace();
                match (tokens.next(), tokens.next()) {
                    (Some(label), None) if rest.starts_with(char::is_whitespace) => {
                        intern(label, &mut labels);
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            message: format!("expected `{NODE_PRAGMA} <label>`"),
                        })
                    }
                }
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (src, dst) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(s), Some(d), None) => (s, d),
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("expected two node labels, found {}", line.split_whitespace().count()),
                    })
                }
            };
            let s = intern(src, &mut labels);
            let d = intern(dst, &mut labels);
            edges.push((s, d));
        }
        if labels.is_empty() {
            return Err(Error::EmptyInput);
        }
        Self::with_labels(labels, edges)
    }

    /// Emits one `src<TAB>dst` line per edge, sorted by `(src id, dst id)`.
    ///
    /// When reloading the edges alone would not reproduce the node set and id
    /// order (isolated nodes, or first appearance differing from id order), a
    /// `#@node` declaration block listing every node in id order precedes the
    /// edges.
    pub fn write_edge_list(&self) -> String {
        let mut out = String::new();
        if !self.edges_preserve_ids() {
            for label in &self.labels {
                out.push_str(NODE_PRAGMA);
                out.push('\t');
                out.push_str(label);
                out.push('\n');
            }
        }
        for &(s, d) in &self.edges {
            out.push_str(self.label(s));
            out.push('\t');
            out.push_str(self.label(d));
            out.push('\n');
        }
        out
    }

    fn edges_preserve_ids(&self) -> bool {
        let mut next = 0u32;
        let mut seen = vec![false; self.node_count()];
        for &(s, d) in &self.edges {
            for v in [s, d] {
                if !seen[v.index()] {
                    if v.0 != next {
                        return false;
                    }
                    seen[v.index()] = true;
                    next += 1;
                }
            }
        }
        next as usize == self.node_count()
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId::from)
    }

    /// Edges sorted by `(src, dst)`.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Sorted out-neighbours.
    #[inline]
    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.out_adj[v.index()]
    }

    /// Sorted in-neighbours.
    #[inline]
    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.in_adj[v.index()]
    }

    #[inline]
    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_adj[v.index()].len()
    }

    #[inline]
    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_adj[v.index()].len()
    }

    pub fn has_edge(&self, src: NodeId, dst: NodeId) -> bool {
        self.out_adj
            .get(src.index())
            .is_some_and(|adj| adj.binary_search(&dst).is_ok())
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn self_loop_count(&self) -> usize {
        self.self_loops
    }

    /// Number of duplicate edges dropped while building this network.
    pub fn duplicates_collapsed(&self) -> usize {
        self.duplicates_collapsed
    }

    /// Returns a new network with `additions` appended. Added edges must be
    /// new and must not be self-loops.
    pub fn with_added_edges(&self, additions: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut edges = self.edges.clone();
        for (s, d) in additions {
            if s == d {
                return Err(Error::InvalidEdge { src: s, dst: d, reason: "self-loop" });
            }
            if s.index() >= self.node_count() || d.index() >= self.node_count() {
                return Err(Error::InvalidEdge { src: s, dst: d, reason: "endpoint out of range" });
            }
            if self.has_edge(s, d) || edges[self.edges.len()..].contains(&(s, d)) {
                return Err(Error::InvalidEdge { src: s, dst: d, reason: "edge already present" });
            }
            edges.push((s, d));
        }
        Self::with_labels(self.labels.clone(), edges)
    }

    pub fn bipartite(&self) -> BipartiteView<'_> {
        BipartiteView { net: self }
    }
}

/// Label-level equality: same label table and same labelled edge set.
impl PartialEq for DirectedNetwork {
    fn eq(&self, other: &Self) -> bool {
        if self.node_count() != other.node_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut mine: Vec<(&str, &str)> =
            self.edges.iter().map(|&(s, d)| (self.label(s), self.label(d))).collect();
        let mut theirs: Vec<(&str, &str)> =
            other.edges.iter().map(|&(s, d)| (other.label(s), other.label(d))).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        let mut la: Vec<&String> = self.labels.iter().collect();
        let mut lb: Vec<&String> = other.labels.iter().collect();
        la.sort_unstable();
        lb.sort_unstable();
        mine == theirs && la == lb
    }
}

impl Eq for DirectedNetwork {}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasicStats {
    pub nodes: usize,
    pub edges: usize,
    /// Total-degree convention, `2L/N`.
    pub avg_degree: f64,
    pub self_loops: usize,
}

pub fn basic_stats(net: &DirectedNetwork) -> Result<BasicStats> {
    let n = net.node_count();
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    Ok(BasicStats {
        nodes: n,
        edges: net.edge_count(),
        avg_degree: 2.0 * net.edge_count() as f64 / n as f64,
        self_loops: net.self_loop_count(),
    })
}

/// Out-copy of a node in the bipartite split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutCopy(pub NodeId);

/// In-copy of a node in the bipartite split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InCopy(pub NodeId);

/// Full bipartite split: every node has both an out-copy and an in-copy,
/// zero-degree copies are isolated.
#[derive(Clone, Copy, Debug)]
pub struct BipartiteView<'a> {
    net: &'a DirectedNetwork,
}

impl<'a> BipartiteView<'a> {
    pub fn out_copies(&self) -> impl Iterator<Item = OutCopy> + 'a {
        self.net.nodes().map(OutCopy)
    }

    pub fn in_copies(&self) -> impl Iterator<Item = InCopy> + 'a {
        self.net.nodes().map(InCopy)
    }

    pub fn edges(&self) -> impl Iterator<Item = (OutCopy, InCopy)> + 'a {
        self.net.edges().iter().map(|&(s, d)| (OutCopy(s), InCopy(d)))
    }

    pub fn edge_count(&self) -> usize {
        self.net.edge_count()
    }
}
