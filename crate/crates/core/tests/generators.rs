use ctrlnet::generators::{generate, GenSpec};
use ctrlnet::{DirectedNetwork, NodeId};
use proptest::prelude::*;

/// Discrete power-law exponent estimate over degrees `>= kmin`.
fn tail_exponent(degrees: &[usize], kmin: usize) -> f64 {
    let tail: Vec<f64> = degrees.iter().filter(|&&d| d >= kmin).map(|&d| d as f64).collect();
    let s: f64 = tail.iter().map(|d| (d / (kmin as f64 - 0.5)).ln()).sum();
    1.0 + tail.len() as f64 / s
}

#[test]
fn scale_free_tails_follow_gamma() {
    const TOL: f64 = 0.3;
    for seed in 0..3 {
        let net = generate(&GenSpec::sf(10_000, 6.0, 3.0, seed)).unwrap();
        let ins: Vec<usize> = net.nodes().map(|v| net.in_degree(v)).collect();
        let outs: Vec<usize> = net.nodes().map(|v| net.out_degree(v)).collect();
        for (name, d) in [("in", &ins), ("out", &outs)] {
            let g = tail_exponent(d, 10);
            assert!((g - 3.0).abs() <= TOL, "seed {seed} {name}-degree exponent {g:.2}");
        }
    }
}

#[test]
fn er_degrees_are_binomial() {
    let (n, k) = (2000usize, 8.0);
    let net = generate(&GenSpec::er(n, k, 11)).unwrap();
    let outs: Vec<f64> = net.nodes().map(|v| net.out_degree(v) as f64).collect();
    let mean = outs.iter().sum::<f64>() / n as f64;
    let var = outs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    // out-degree ~ Binomial(N-1, L / (N(N-1))): mean k/2, variance about k/2
    assert!((mean - k / 2.0).abs() < 1e-9);
    assert!((var / (k / 2.0) - 1.0).abs() < 0.15, "variance {var}");
    let max = outs.iter().cloned().fold(0.0, f64::max);
    assert!(max < 20.0, "max out-degree {max}");
}

/// (N, L, printed <k>) for published real networks.
const REAL_SIZES: [(u64, u64, f64); 6] = [
    (54, 356, 13.19),
    (122, 189, 3.10),
    (252, 399, 3.17),
    (512, 819, 3.20),
    (1912, 53498, 55.96),
    (400727, 3200440, 15.97),
];

#[test]
fn average_degree_is_twice_edges_over_nodes() {
    for (n, l, k) in REAL_SIZES {
        let got = (2.0 * l as f64 / n as f64 * 100.0).round() / 100.0;
        assert_eq!(got, k, "N={n} L={l}");
    }
    let spec = GenSpec::sf(1000, 6.0, 3.0, 1);
    assert_eq!(spec.target_edges(), 3000);
    assert_eq!(generate(&spec).unwrap().edge_count(), 3000);
}

fn arb_network() -> impl Strategy<Value = DirectedNetwork> {
    (1usize..=30).prop_flat_map(|n| {
        proptest::collection::vec((0..n as u32, 0..n as u32), 0..=4 * n).prop_map(move |pairs| {
            DirectedNetwork::from_edges(n, pairs.into_iter().map(|(a, b)| (NodeId(a), NodeId(b)))).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(net in arb_network()) {
        let back = DirectedNetwork::load_edge_list(&net.write_edge_list()).unwrap();
        prop_assert_eq!(back.labels(), net.labels());
        prop_assert_eq!(back.edges(), net.edges());
        prop_assert_eq!(back.self_loop_count(), net.self_loop_count());
    }

    #[test]
    fn generated_networks_are_simple(n in 2usize..200, k in 0.0f64..6.0, seed in any::<u64>(), sf in any::<bool>()) {
        let spec = if sf { GenSpec::sf(n, k, 2.7, seed) } else { GenSpec::er(n, k, seed) };
        prop_assume!(spec.target_edges() <= n * (n - 1) / 4);
        let net = generate(&spec).unwrap();
        prop_assert_eq!(net.edge_count(), spec.target_edges());
        prop_assert_eq!(net.node_count(), n);
        prop_assert!(net.edges().iter().all(|(a, b)| a != b));
        prop_assert!(net.edges().windows(2).all(|w| w[0] < w[1]));
    }
}
