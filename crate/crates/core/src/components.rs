//! Control components: connected components of the undirected input graph,
//! typed as input (IC), unsaturated matched (UMC) or saturated matched (SMC).

use std::fmt;

use serde::Serialize;

use crate::graph::{basic_stats, DirectedNetwork, NodeId};
use crate::input_graph::InputGraph;
use crate::matching::{input_nodes, unsaturated_nodes, Matching};
use crate::report::{percent, ratio};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ComponentKind {
    /// Contains at least one input node.
    #[serde(rename = "IC")]
    Ic,
    /// No input node, but some unsaturated node has an edge into it.
    #[serde(rename = "UMC")]
    Umc,
    /// No input node and no edge from any unsaturated node.
    #[serde(rename = "SMC")]
    Smc,
}

impl ComponentKind {
    /// Single-letter tag used in table-style output.
    pub fn letter(self) -> char {
        match self {
            ComponentKind::Ic => 'I',
            ComponentKind::Umc => 'U',
            ComponentKind::Smc => 'S',
        }
    }

    pub fn is_matched(self) -> bool {
        !matches!(self, ComponentKind::Ic)
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Ic => "IC",
            ComponentKind::Umc => "UMC",
            ComponentKind::Smc => "SMC",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlComponent {
    pub id: usize,
    /// Sorted by id.
    pub members: Vec<NodeId>,
    pub kind: Option<ComponentKind>,
}

impl ControlComponent {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

struct DisjointSet {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n as u32).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            std::cmp::Ordering::Less => self.parent[ra as usize] = rb,
            std::cmp::Ordering::Greater => self.parent[rb as usize] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb as usize] = ra;
                self.rank[ra as usize] += 1;
            }
        }
    }
}

/// Components of the undirected view of `ig`. Ids follow the order of each
/// component's smallest member; isolated nodes are singletons.
pub fn find_components(ig: &InputGraph) -> Vec<ControlComponent> {
    let n = ig.node_count();
    let mut dsu = DisjointSet::new(n);
    for (_, e) in ig.edges() {
        dsu.union(e.from.0, e.to.0);
    }
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<ControlComponent> = Vec::new();
    for v in 0..n as u32 {
        let root = dsu.find(v) as usize;
        if slot[root] == usize::MAX {
            slot[root] = comps.len();
            comps.push(ControlComponent { id: comps.len(), members: Vec::new(), kind: None });
        }
        comps[slot[root]].members.push(NodeId(v));
    }
    comps
}

/// Sets the kind of `comp` from the matching it was derived from.
pub fn classify_kind(net: &DirectedNetwork, m: &Matching, comp: ControlComponent) -> ControlComponent {
    let mut comp = comp;
    let has_input = comp.members.iter().any(|&v| m.matched_in(v).is_none());
    let kind = if has_input {
        ComponentKind::Ic
    } else if comp
        .members
        .iter()
        .any(|&x| net.in_neighbors(x).iter().any(|&u| m.matched_out(u).is_none()))
    {
        ComponentKind::Umc
    } else {
        ComponentKind::Smc
    };
    comp.kind = Some(kind);
    comp
}

/// Unsaturated nodes with an edge into `comp`, in id order.
pub fn unsaturated_linking(net: &DirectedNetwork, m: &Matching, comp: &ControlComponent) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = comp
        .members
        .iter()
        .flat_map(|&x| net.in_neighbors(x).iter().copied())
        .filter(|&u| m.matched_out(u).is_none())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Finds and classifies every component.
pub fn classified_components(net: &DirectedNetwork, ig: &InputGraph) -> Vec<ControlComponent> {
    find_components(ig).into_iter().map(|c| classify_kind(net, ig.matching(), c)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentReport {
    pub nodes: usize,
    pub edges: usize,
    pub avg_degree: f64,
    pub matching_size: usize,
    pub input_count: usize,
    pub perfectly_matched: bool,
    /// `(N - |M|) / N`.
    pub n_mis: f64,
    pub components: Vec<ControlComponent>,
    pub cc_max_id: usize,
    pub cc_max_size: usize,
    pub cc_max_fraction: f64,
    pub cc_max_kind: ComponentKind,
}

impl ComponentReport {
    pub fn cc_max_letter(&self) -> char {
        self.cc_max_kind.letter()
    }

    /// Table-style columns: `n_MIS` and `CC_max` as percentages rounded to
    /// two decimals, the latter tagged with its kind letter.
    pub fn table_row(&self) -> (f64, String) {
        (percent(self.n_mis), format!("{:.2}%({})", percent(self.cc_max_fraction), self.cc_max_letter()))
    }

    pub fn count_of(&self, kind: ComponentKind) -> usize {
        self.components.iter().filter(|c| c.kind == Some(kind)).count()
    }

    /// The largest component of each kind, the per-type summary view.
    pub fn largest_by_kind(&self) -> Vec<(ComponentKind, &ControlComponent)> {
        [ComponentKind::Ic, ComponentKind::Umc, ComponentKind::Smc]
            .into_iter()
            .filter_map(|k| {
                self.components
                    .iter()
                    .filter(|c| c.kind == Some(k))
                    .min_by_key(|c| (std::cmp::Reverse(c.size()), c.id))
                    .map(|c| (k, c))
            })
            .collect()
    }

    /// Six-significant-digit ratio of CC_max to N.
    pub fn cc_max_ratio(&self) -> f64 {
        ratio(self.cc_max_fraction)
    }
}

/// Fills a report from classified components. The largest component wins;
/// ties go to IC, then UMC, then SMC, then the smallest id.
pub fn component_report(net: &DirectedNetwork, m: &Matching, ig: &InputGraph) -> Result<ComponentReport> {
    let stats = basic_stats(net)?;
    let components = classified_components(net, ig);
    let inputs = input_nodes(net, m);
    debug_assert_eq!(unsaturated_nodes(net, m).len(), inputs.len());
    let best = components
        .iter()
        .min_by_key(|c| (std::cmp::Reverse(c.size()), c.kind, c.id))
        .expect("a non-empty network has at least one component");
    let n = stats.nodes as f64;
    Ok(ComponentReport {
        nodes: stats.nodes,
        edges: stats.edges,
        avg_degree: stats.avg_degree,
        matching_size: m.size(),
        input_count: inputs.len(),
        perfectly_matched: inputs.perfectly_matched,
        n_mis: (stats.nodes - m.size()) as f64 / n,
        cc_max_id: best.id,
        cc_max_size: best.size(),
        cc_max_fraction: best.size() as f64 / n,
        cc_max_kind: best.kind.expect("classified"),
        components,
    })
}
