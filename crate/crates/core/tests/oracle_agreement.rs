mod common;

use ctrlnet::input_graph::{build_input_graph, classify_nodes};
use ctrlnet::matching::maximum_matching;
use ctrlnet::oracle::{classify_exhaustive, enumerate_maximum_matchings, OracleGuard};
use ctrlnet::{Analysis, DirectedNetwork, NodeClass, NodeId};
use proptest::prelude::*;

fn check(net: &DirectedNetwork) {
    let fast = classify_nodes(&build_input_graph(net, &maximum_matching(net, 0)).unwrap());
    let slow = classify_exhaustive(net, OracleGuard::default()).unwrap();
    assert_eq!(fast, slow, "classes disagree on\n{}", net.write_edge_list());

    let e = enumerate_maximum_matchings(net, OracleGuard::default()).unwrap();
    let a = Analysis::run(net, 0).unwrap();
    assert_eq!(e.matching_size, a.matching.size());
    let union: Vec<NodeId> = {
        let mut u: Vec<NodeId> = e.mis_list.iter().flatten().copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    assert_eq!(union, a.input_graph.possible_inputs());
    for v in net.nodes() {
        assert_eq!(e.in_all_mis[v.index()], net.in_degree(v) == 0, "node {v}");
    }
}

#[test]
fn worked_networks_match_oracle() {
    for net in common::worked() {
        check(&net);
    }
}

#[test]
fn random_corpus_matches_oracle() {
    for net in common::small_corpus() {
        check(&net);
    }
}

#[test]
fn worked_classes() {
    let nets = common::worked();
    let class = |net: &DirectedNetwork, l: &str| {
        Analysis::run(net, 0).unwrap().classes[net.node_by_label(l).unwrap().index()]
    };
    let crit = NodeClass::PossibleInput { critical: true };
    let poss = NodeClass::PossibleInput { critical: false };
    assert_eq!([class(&nets[0], "a"), class(&nets[0], "b"), class(&nets[0], "c")], [poss, poss, crit]);
    assert_eq!(class(&nets[1], "3"), NodeClass::Redundant);
    assert_eq!(class(&nets[2], "a"), NodeClass::Redundant);
    assert_eq!(class(&nets[2], "b"), poss);
    assert_eq!(class(&nets[3], "3"), NodeClass::Redundant);
}

#[test]
fn star_mis_list() {
    let net = &common::worked()[0];
    let e = enumerate_maximum_matchings(net, OracleGuard::default()).unwrap();
    let named: Vec<Vec<&str>> = e
        .mis_list
        .iter()
        .map(|m| {
            let mut v: Vec<&str> = m.iter().map(|&x| net.label(x)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    assert_eq!(e.matching_count, 2);
    assert_eq!(named.len(), 2);
    assert!(named.contains(&vec!["a", "c"]) && named.contains(&vec!["b", "c"]));
}

fn arb_network() -> impl Strategy<Value = DirectedNetwork> {
    (2usize..=9).prop_flat_map(|n| {
        proptest::collection::vec((0..n as u32, 0..n as u32), 0..=3 * n).prop_map(move |pairs| {
            let edges = pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (NodeId(a), NodeId(b)));
            DirectedNetwork::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classes_match_oracle(net in arb_network()) {
        check(&net);
    }

    #[test]
    fn every_seed_gives_a_maximum_matching(net in arb_network(), seed in 0u64..1000) {
        let e = enumerate_maximum_matchings(&net, OracleGuard::default()).unwrap();
        let m = maximum_matching(&net, seed);
        prop_assert_eq!(m.size(), e.matching_size);
        prop_assert!(ctrlnet::matching::is_maximum(&net, &m));
    }
}
