//! Edge-addition procedures that change the kind of a control component.
//!
//! * IC to SMC: give every input node of the component a new in-edge from a
//!   distinct unsaturated node.
//! * UMC to SMC: give every unsaturated node linking into the component a new
//!   out-edge to a distinct input node.
//! * SMC to IC: point the matched predecessor of a member at an input node,
//!   which makes that input node control adjacent to the member. The single
//!   mode picks the member with the largest control-reachable set; the full
//!   mode covers the whole component greedily. `smc_to_ic_members` does the
//!   same for any redundant node set whose reachable sets are free of
//!   unsaturated in-links.
//!
//! Saturation plans extend the current maximum matching by the new edges;
//! adjacency links leave it unchanged. Either way the carried matching stays
//! maximum in the augmented network.

use serde::Serialize;

use crate::analysis::Analysis;
use crate::components::{unsaturated_linking, ComponentKind, ControlComponent};
use crate::error::{Error, Result};
use crate::graph::{DirectedNetwork, NodeId};
use crate::input_graph::reach_into;
use crate::matching::Matching;
use crate::report::ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationale {
    SaturateInput,
    SaturateUnsaturated,
    AdjacencyLink,
}

impl Rationale {
    pub fn name(self) -> &'static str {
        match self {
            Rationale::SaturateInput => "saturate_input",
            Rationale::SaturateUnsaturated => "saturate_unsaturated",
            Rationale::AdjacencyLink => "adjacency_link",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeAddition {
    pub src: NodeId,
    pub dst: NodeId,
    pub rationale: Rationale,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transition {
    IcToSmc,
    UmcToSmc,
    SmcToIcSingle,
    SmcToIcFull,
}

impl Transition {
    pub fn target_kind(self) -> ComponentKind {
        match self {
            Transition::IcToSmc | Transition::UmcToSmc => ComponentKind::Smc,
            Transition::SmcToIcSingle | Transition::SmcToIcFull => ComponentKind::Ic,
        }
    }

    fn source_kind(self) -> ComponentKind {
        match self {
            Transition::IcToSmc => ComponentKind::Ic,
            Transition::UmcToSmc => ComponentKind::Umc,
            Transition::SmcToIcSingle | Transition::SmcToIcFull => ComponentKind::Smc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanMetrics {
    /// Added edges over the original edge count.
    pub p: f64,
    /// Fraction of nodes whose possible-input/redundant class changed.
    pub delta_nd: f64,
    pub changed_nodes: usize,
    pub mis_before: usize,
    pub mis_after: usize,
    /// Whether the re-analysis shows the requested kind; see `goal_attained`.
    pub attained: bool,
    /// Kinds of the components holding the target (saturation plans) or
    /// covered (links) nodes after re-analysis.
    pub kinds_after: Vec<ComponentKind>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlterationPlan {
    pub transition: Transition,
    pub target_component: usize,
    pub target_members: Vec<NodeId>,
    pub additions: Vec<EdgeAddition>,
    /// Members expected to turn possible input (SMC to IC only).
    pub covered: Vec<NodeId>,
    pub metrics: Option<PlanMetrics>,
}

impl AlterationPlan {
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.additions.iter().map(|a| (a.src, a.dst))
    }

    fn saturating(&self) -> bool {
        matches!(self.transition, Transition::IcToSmc | Transition::UmcToSmc)
    }
}

fn checked<'a>(analysis: &'a Analysis, comp_id: usize, transition: Transition) -> Result<&'a ControlComponent> {
    let comp = analysis.component(comp_id)?;
    let found = comp.kind.expect("classified");
    let expected = transition.source_kind();
    if found != expected {
        return Err(Error::WrongKind {
            id: comp_id,
            expected: match expected {
                ComponentKind::Ic => "IC",
                ComponentKind::Umc => "UMC",
                ComponentKind::Smc => "SMC",
            },
            found,
        });
    }
    Ok(comp)
}

/// Pairs every `left` node with a distinct `right` node, lowest id first,
/// skipping forbidden pairs. When the only free candidates are forbidden for
/// a node, an earlier pair is swapped if that makes both pairs allowed.
fn pair_lowest(
    left: &[NodeId],
    right: &[NodeId],
    forbidden: impl Fn(NodeId, NodeId) -> bool,
) -> std::result::Result<Vec<(NodeId, NodeId)>, (Vec<(NodeId, NodeId)>, bool)> {
    let mut used = vec![false; right.len()];
    let mut pairs: Vec<(NodeId, NodeId)> = Vec::with_capacity(left.len());
    // index into `right` of each pair's partner
    let mut partner: Vec<usize> = Vec::with_capacity(left.len());
    for &n in left {
        if let Some(j) = (0..right.len()).find(|&j| !used[j] && !forbidden(n, right[j])) {
            used[j] = true;
            pairs.push((n, right[j]));
            partner.push(j);
            continue;
        }
        let Some(j) = (0..right.len()).find(|&j| !used[j]) else {
            // out of candidates entirely
            return Err((pairs, false));
        };
        let swap = (0..pairs.len()).find(|&k| {
            let (n_prev, m_prev) = pairs[k];
            !forbidden(n_prev, right[j]) && !forbidden(n, m_prev)
        });
        match swap {
            Some(k) => {
                let (n_prev, m_prev) = pairs[k];
                let old = partner[k];
                pairs[k] = (n_prev, right[j]);
                partner[k] = j;
                used[j] = true;
                pairs.push((n, m_prev));
                partner.push(old);
            }
            None => return Err((pairs, true)),
        }
    }
    Ok(pairs)
}

/// Saturates every input node of an IC with an edge from a distinct
/// unsaturated node.
pub fn ic_to_smc(net: &DirectedNetwork, analysis: &Analysis, comp_id: usize) -> Result<AlterationPlan> {
    let comp = checked(analysis, comp_id, Transition::IcToSmc)?;
    let m = &analysis.matching;
    let targets: Vec<NodeId> = comp.members.iter().copied().filter(|&v| m.matched_in(v).is_none()).collect();
    let sources = &analysis.unsaturated;
    if sources.len() < targets.len() {
        return Err(Error::InvariantViolation(format!(
            "{} unsaturated nodes for {} input nodes",
            sources.len(),
            targets.len()
        )));
    }
    let pairs = pair_lowest(&targets, sources, |n, src| src == n || net.has_edge(src, n))
        .map_err(|_| Error::NoFeasibleAddition)?;
    Ok(AlterationPlan {
        transition: Transition::IcToSmc,
        target_component: comp.id,
        target_members: comp.members.clone(),
        additions: pairs
            .into_iter()
            .map(|(n, src)| EdgeAddition { src, dst: n, rationale: Rationale::SaturateInput })
            .collect(),
        covered: Vec::new(),
        metrics: None,
    })
}

/// Saturates every unsaturated node linking into a UMC with an edge to a
/// distinct input node.
pub fn umc_to_smc(net: &DirectedNetwork, analysis: &Analysis, comp_id: usize) -> Result<AlterationPlan> {
    let comp = checked(analysis, comp_id, Transition::UmcToSmc)?;
    let m = &analysis.matching;
    let linking = unsaturated_linking(net, m, comp);
    let inputs = &analysis.inputs.nodes;
    let forbidden = |u: NodeId, d: NodeId| u == d || net.has_edge(u, d);
    let to_additions = |pairs: Vec<(NodeId, NodeId)>| -> Vec<EdgeAddition> {
        pairs
            .into_iter()
            .map(|(src, dst)| EdgeAddition { src, dst, rationale: Rationale::SaturateUnsaturated })
            .collect()
    };
    let pairs = match pair_lowest(&linking, inputs, forbidden) {
        Ok(p) => p,
        Err((_, true)) => return Err(Error::NoFeasibleAddition),
        Err((partial, false)) => {
            return Err(Error::InsufficientInputNodes {
                needed: linking.len(),
                available: inputs.len(),
                partial: to_additions(partial),
            })
        }
    };
    Ok(AlterationPlan {
        transition: Transition::UmcToSmc,
        target_component: comp.id,
        target_members: comp.members.clone(),
        additions: to_additions(pairs),
        covered: Vec::new(),
        metrics: None,
    })
}

/// Edge `(m, d)` from the matched predecessor `m` of `member` to the
/// lowest-id input node `d`. When the only input node is `m` itself, any
/// other possible input node serves: Phase 1 still reaches `d`, and the new
/// unmatched edge makes it control adjacent to `member`.
fn link_edge(net: &DirectedNetwork, analysis: &Analysis, member: NodeId) -> Result<EdgeAddition> {
    let pred = analysis.matching.matched_in(member).ok_or_else(|| {
        Error::InvariantViolation(format!("matched-component member {member} has no matched in-edge"))
    })?;
    let feasible = |d: &NodeId| *d != pred && !net.has_edge(pred, *d);
    let d = analysis
        .inputs
        .nodes
        .iter()
        .copied()
        .find(feasible)
        .or_else(|| net.nodes().filter(|v| analysis.classes[v.index()].is_possible_input()).find(feasible))
        .ok_or(Error::NoFeasibleAddition)?;
    Ok(EdgeAddition { src: pred, dst: d, rationale: Rationale::AdjacencyLink })
}

/// Nodes with an in-edge from an unsaturated node.
fn linked_nodes(net: &DirectedNetwork, analysis: &Analysis) -> Vec<bool> {
    let mut linked = vec![false; analysis.node_count()];
    for &u in &analysis.unsaturated {
        for &x in net.out_neighbors(u) {
            linked[x.index()] = true;
        }
    }
    linked
}

/// Control-reachable set of every member, or `None` where the set contains a
/// node linked by an unsaturated node: a link there would open an
/// augmenting path.
fn clean_reach_sets(net: &DirectedNetwork, analysis: &Analysis, members: &[NodeId]) -> Vec<Option<Vec<NodeId>>> {
    let linked = linked_nodes(net, analysis);
    let mut seen = vec![false; analysis.node_count()];
    members
        .iter()
        .map(|&v| {
            let reach = reach_into(&analysis.input_graph, v, &mut seen);
            (!reach.iter().any(|x| linked[x.index()])).then_some(reach)
        })
        .collect()
}

/// SMC to IC on an arbitrary set of redundant nodes, such as the former
/// members of a component that was just saturated. Only members whose
/// control-reachable set is free of unsaturated in-links are linked, so the
/// matching stays maximum. On an SMC every member qualifies, except one whose
/// matched predecessor is the only input node.
///
/// `transition` selects single or full mode; `target_component` is the id of
/// the component holding the first member.
pub fn smc_to_ic_members(
    net: &DirectedNetwork,
    analysis: &Analysis,
    members: &[NodeId],
    transition: Transition,
) -> Result<AlterationPlan> {
    let first = *members.first().ok_or(Error::NoFeasibleAddition)?;
    if !matches!(transition, Transition::SmcToIcSingle | Transition::SmcToIcFull) {
        return Err(Error::InvalidSpec(format!("{transition:?} is not an SMC to IC transition")));
    }
    if let Some(&v) = members.iter().find(|v| analysis.classes[v.index()].is_possible_input()) {
        return Err(Error::InvariantViolation(format!("node {v} is already a possible input node")));
    }
    if analysis.inputs.is_empty() {
        return Err(Error::NoInputNode);
    }
    // members that can be linked: clean reachable set and a feasible edge
    let reach: Vec<Option<(Vec<NodeId>, EdgeAddition)>> = clean_reach_sets(net, analysis, members)
        .into_iter()
        .zip(members)
        .map(|(r, &v)| r.and_then(|r| link_edge(net, analysis, v).ok().map(|e| (r, e))))
        .collect();
    let mut additions = Vec::new();
    let mut covered_mask = vec![false; analysis.node_count()];
    let mut covered = Vec::new();
    let mut take = |i: usize, additions: &mut Vec<EdgeAddition>| {
        let (r, e) = reach[i].as_ref().expect("linkable");
        additions.push(*e);
        for &v in r {
            if !covered_mask[v.index()] {
                covered_mask[v.index()] = true;
                covered.push(v);
            }
        }
    };
    if transition == Transition::SmcToIcSingle {
        let size = |i: usize| reach[i].as_ref().map(|(r, _)| r.len());
        let best = (0..members.len()).max_by_key(|&i| (size(i), std::cmp::Reverse(i))).expect("non-empty");
        if size(best).is_none() {
            return Err(Error::NoFeasibleAddition);
        }
        take(best, &mut additions);
    } else {
        let mut in_set = vec![false; analysis.node_count()];
        for &v in members {
            in_set[v.index()] = true;
        }
        let mut remaining = members.len();
        let mut done = vec![false; analysis.node_count()];
        while remaining > 0 {
            let fresh = |i: usize| -> Vec<NodeId> {
                reach[i]
                    .as_ref()
                    .map(|(r, _)| r.iter().copied().filter(|v| in_set[v.index()] && !done[v.index()]).collect())
                    .unwrap_or_default()
            };
            let best = (0..members.len()).max_by_key(|&i| (fresh(i).len(), std::cmp::Reverse(i))).expect("non-empty");
            let gained = fresh(best);
            if gained.is_empty() {
                return Err(Error::NoFeasibleAddition);
            }
            for v in gained {
                done[v.index()] = true;
                remaining -= 1;
            }
            take(best, &mut additions);
        }
    }
    covered.sort_unstable();
    Ok(AlterationPlan {
        transition,
        target_component: analysis.component_of(first).id,
        target_members: members.to_vec(),
        additions,
        covered,
        metrics: None,
    })
}

/// One adjacency link to the member with the largest control-reachable set.
pub fn smc_to_ic_single(net: &DirectedNetwork, analysis: &Analysis, comp_id: usize) -> Result<AlterationPlan> {
    let comp = checked(analysis, comp_id, Transition::SmcToIcSingle)?;
    smc_to_ic_members(net, analysis, &comp.members, Transition::SmcToIcSingle)
}

/// Greedy cover of an SMC by control-reachable sets, one adjacency link per
/// chosen member.
pub fn smc_to_ic_full(net: &DirectedNetwork, analysis: &Analysis, comp_id: usize) -> Result<AlterationPlan> {
    let comp = checked(analysis, comp_id, Transition::SmcToIcFull)?;
    smc_to_ic_members(net, analysis, &comp.members, Transition::SmcToIcFull)
}

/// Dispatches on `transition`.
pub fn plan(net: &DirectedNetwork, analysis: &Analysis, comp_id: usize, transition: Transition) -> Result<AlterationPlan> {
    match transition {
        Transition::IcToSmc => ic_to_smc(net, analysis, comp_id),
        Transition::UmcToSmc => umc_to_smc(net, analysis, comp_id),
        Transition::SmcToIcSingle => smc_to_ic_single(net, analysis, comp_id),
        Transition::SmcToIcFull => smc_to_ic_full(net, analysis, comp_id),
    }
}

/// The network with the plan's edges added.
pub fn apply_plan(net: &DirectedNetwork, plan: &AlterationPlan) -> Result<DirectedNetwork> {
    net.with_added_edges(plan.edges())
}

/// The matching carried into the augmented network: saturation edges join
/// it, adjacency links do not.
pub fn carried_matching(before: &Matching, plan: &AlterationPlan) -> Result<Matching> {
    if plan.saturating() {
        before.extended(plan.edges())
    } else {
        Ok(before.clone())
    }
}

/// Whether `after` shows the requested kind on the plan's nodes. SMC
/// targets: every former member is redundant and none has an in-edge from an
/// unsaturated node. IC targets: every covered node is a possible input node.
pub fn goal_attained(net_after: &DirectedNetwork, after: &Analysis, plan: &AlterationPlan) -> bool {
    match plan.transition.target_kind() {
        ComponentKind::Smc => {
            let linked = linked_nodes(net_after, after);
            plan.target_members
                .iter()
                .all(|&v| !after.classes[v.index()].is_possible_input() && !linked[v.index()])
        }
        _ => plan.covered.iter().all(|&v| after.classes[v.index()].is_possible_input()),
    }
}

/// Kinds of the components holding the plan's nodes after re-analysis, in
/// IC, UMC, SMC order.
fn kinds_after(after: &Analysis, plan: &AlterationPlan) -> Vec<ComponentKind> {
    let nodes = if plan.saturating() { &plan.target_members } else { &plan.covered };
    let mut kinds: Vec<ComponentKind> = nodes.iter().map(|&v| after.kind_of(v)).collect();
    kinds.sort_unstable();
    kinds.dedup();
    kinds
}

/// Fills the plan's metrics from analyses of the network before and after
/// the additions.
pub fn alteration_report(
    net_before: &DirectedNetwork,
    net_after: &DirectedNetwork,
    before: &Analysis,
    after: &Analysis,
    plan: &AlterationPlan,
) -> AlterationPlan {
    let n = before.node_count();
    let changed = before
        .classes
        .iter()
        .zip(&after.classes)
        .filter(|(a, b)| a.is_possible_input() != b.is_possible_input())
        .count();
    let l = net_before.edge_count();
    let mut out = plan.clone();
    out.metrics = Some(PlanMetrics {
        p: if l == 0 { 0.0 } else { ratio(plan.additions.len() as f64 / l as f64) },
        delta_nd: ratio(changed as f64 / n as f64),
        changed_nodes: changed,
        mis_before: before.mis_size(),
        mis_after: after.mis_size(),
        attained: goal_attained(net_after, after, plan),
        kinds_after: kinds_after(after, plan),
    });
    out
}

/// Result of planning, applying and re-analysing one alteration.
#[derive(Clone, Debug)]
pub struct Alteration {
    pub plan: AlterationPlan,
    pub network: DirectedNetwork,
    pub after: Analysis,
}

/// Plans `transition` on component `comp_id`, applies it and re-analyses the
/// augmented network with the carried matching, which must still be maximum.
pub fn alter(net: &DirectedNetwork, before: &Analysis, comp_id: usize, transition: Transition) -> Result<Alteration> {
    let plan = plan(net, before, comp_id, transition)?;
    execute(net, before, plan)
}

/// Applies a plan and re-analyses the augmented network with the carried
/// matching, which must still be maximum.
pub fn execute(net: &DirectedNetwork, before: &Analysis, plan: AlterationPlan) -> Result<Alteration> {
    let network = apply_plan(net, &plan)?;
    let matching = carried_matching(&before.matching, &plan)?;
    let after = Analysis::with_matching(&network, matching)?;
    let plan = alteration_report(net, &network, before, &after, &plan);
    Ok(Alteration { plan, network, after })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input_graph::NodeClass;

    fn setup(text: &str, pairs: &[(&str, &str)]) -> (DirectedNetwork, Analysis) {
        let net = DirectedNetwork::load_edge_list(text).unwrap();
        let m = Matching::from_pairs(
            &net,
            pairs.iter().map(|&(s, d)| (net.node_by_label(s).unwrap(), net.node_by_label(d).unwrap())),
        )
        .unwrap();
        let a = Analysis::with_matching(&net, m).unwrap();
        (net, a)
    }

    fn comp_with(net: &DirectedNetwork, a: &Analysis, label: &str) -> usize {
        a.component_of(net.node_by_label(label).unwrap()).id
    }

    fn labels(net: &DirectedNetwork, plan: &AlterationPlan) -> Vec<(String, String)> {
        plan.additions.iter().map(|e| (net.label(e.src).to_owned(), net.label(e.dst).to_owned())).collect()
    }

    #[test]
    fn dilation_ic_to_smc() {
        let (net, a) = setup("c a\nc b", &[("c", "b")]);
        let done = alter(&net, &a, comp_with(&net, &a, "a"), Transition::IcToSmc).unwrap();
        assert_eq!(labels(&net, &done.plan), [("b".to_owned(), "a".to_owned())]);
        for l in ["a", "b"] {
            assert_eq!(done.after.classes[net.node_by_label(l).unwrap().index()], NodeClass::Redundant);
        }
        let m = done.plan.metrics.unwrap();
        assert!(m.attained);
        assert_eq!((m.mis_before, m.mis_after), (2, 1));
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let (net, a) = setup("c a\nc b", &[("c", "b")]);
        let ic = comp_with(&net, &a, "a");
        assert!(matches!(umc_to_smc(&net, &a, ic), Err(Error::WrongKind { .. })));
        assert!(matches!(smc_to_ic_single(&net, &a, ic), Err(Error::WrongKind { .. })));
        let (net, a) = setup("1 2\n2 3\n3 4", &[("1", "2"), ("2", "3"), ("3", "4")]);
        let smc = comp_with(&net, &a, "3");
        assert!(matches!(ic_to_smc(&net, &a, smc), Err(Error::WrongKind { .. })));
        assert!(matches!(umc_to_smc(&net, &a, smc), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn confluence_umc_to_smc() {
        let (net, a) = setup("1 3\n2 3", &[("1", "3")]);
        let done = alter(&net, &a, comp_with(&net, &a, "3"), Transition::UmcToSmc).unwrap();
        assert_eq!(labels(&net, &done.plan), [("2".to_owned(), "1".to_owned())]);
        let m = done.plan.metrics.as_ref().unwrap();
        assert_eq!(m.p, 0.5);
        assert_eq!((m.mis_before, m.mis_after), (2, 1));
        assert_eq!(m.changed_nodes, 1);
        assert_eq!(m.delta_nd, ratio(1.0 / 3.0));
        assert!(m.attained);
        assert_eq!(done.after.classes[net.node_by_label("1").unwrap().index()], NodeClass::Redundant);
    }

    #[test]
    fn smc_single_link_through_matched_predecessor() {
        let (net, a) = setup("c1 u\nc1 b\nc1 a\nw a", &[("c1", "b"), ("w", "a")]);
        let comp = comp_with(&net, &a, "a");
        assert_eq!(a.component(comp).unwrap().kind, Some(ComponentKind::Smc));
        let done = alter(&net, &a, comp, Transition::SmcToIcSingle).unwrap();
        // lowest-id input node is c1 (first appearance), linked through w
        assert_eq!(labels(&net, &done.plan), [("w".to_owned(), "c1".to_owned())]);
        assert!(done.after.classes[net.node_by_label("a").unwrap().index()].is_possible_input());
        let m = done.plan.metrics.unwrap();
        assert!(m.attained);
        assert_eq!(m.mis_before, m.mis_after);
    }

    #[test]
    fn perfectly_matched_network_has_no_input_to_link() {
        let (net, a) = setup("1 2\n2 1", &[("1", "2"), ("2", "1")]);
        let comp = a.report.cc_max_id;
        assert_eq!(a.component(comp).unwrap().kind, Some(ComponentKind::Smc));
        assert!(matches!(smc_to_ic_single(&net, &a, comp), Err(Error::NoInputNode)));
        assert!(matches!(smc_to_ic_full(&net, &a, comp), Err(Error::NoInputNode)));
    }

    #[test]
    fn forced_link_into_umc_opens_augmenting_path() {
        let (net, a) = setup("1 3\n2 3", &[("1", "3")]);
        let umc = comp_with(&net, &a, "3");
        assert!(matches!(smc_to_ic_single(&net, &a, umc), Err(Error::WrongKind { .. })));
        let three = net.node_by_label("3").unwrap();
        assert!(matches!(
            smc_to_ic_members(&net, &a, &[three], Transition::SmcToIcSingle),
            Err(Error::NoFeasibleAddition)
        ));
        let link = link_edge(&net, &a, three).unwrap();
        let forced = net.with_added_edges([(link.src, link.dst)]).unwrap();
        assert!(!crate::matching::is_maximum(&forced, &a.matching));
    }

    #[test]
    fn saturated_set_links_back() {
        let (net, a) = setup("c a\nc b", &[("c", "b")]);
        let done = alter(&net, &a, comp_with(&net, &a, "a"), Transition::IcToSmc).unwrap();
        let members = done.plan.target_members.clone();
        let back = smc_to_ic_members(&done.network, &done.after, &members, Transition::SmcToIcSingle).unwrap();
        let back = execute(&done.network, &done.after, back).unwrap();
        let m = back.plan.metrics.unwrap();
        assert!(m.attained);
        assert_eq!(m.kinds_after, [ComponentKind::Ic]);
        assert_eq!(m.mis_before, m.mis_after);
    }

    #[test]
    fn empty_plan_metrics() {
        let (net, a) = setup("c a\nc b", &[("c", "b")]);
        let plan = AlterationPlan {
            transition: Transition::SmcToIcFull,
            target_component: 0,
            target_members: vec![],
            additions: vec![],
            covered: vec![],
            metrics: None,
        };
        let r = alteration_report(&net, &net, &a, &a, &plan);
        let m = r.metrics.unwrap();
        assert_eq!((m.p, m.delta_nd), (0.0, 0.0));
    }

    #[test]
    fn pairing_swaps_around_forbidden_tail() {
        let ids = |v: &[u32]| v.iter().map(|&i| NodeId(i)).collect::<Vec<_>>();
        // 1 takes 2 first, then 2 can only take 1; no swap needed.
        let p = pair_lowest(&ids(&[1, 2]), &ids(&[1, 2]), |a, b| a == b).unwrap();
        assert_eq!(p, [(NodeId(1), NodeId(2)), (NodeId(2), NodeId(1))]);
        // 0 takes 1, then 2 is left with itself: swap with the first pair.
        let p = pair_lowest(&ids(&[0, 2]), &ids(&[1, 2]), |a, b| a == b).unwrap();
        assert_eq!(p, [(NodeId(0), NodeId(2)), (NodeId(2), NodeId(1))]);
        assert!(pair_lowest(&ids(&[3]), &ids(&[3]), |a, b| a == b).is_err());
    }
}
