#![allow(dead_code)]

use ctrlnet::generators::gnp_directed;
use ctrlnet::DirectedNetwork;

/// Small hand-traced networks with known classes.
pub const WORKED: [&str; 5] = [
    "c a\nc b",
    "1 2\n2 3\n3 4",
    "c1 u\nc1 b\nc1 a\nw a",
    "1 3\n2 3",
    "1 2\n2 3\n2 4\n5 4",
];

pub fn worked() -> Vec<DirectedNetwork> {
    WORKED.iter().map(|t| DirectedNetwork::load_edge_list(t).unwrap()).collect()
}

/// 300 digraphs with N in 3..=8 and edge probability in {0.1, ..., 0.5}.
pub fn small_corpus() -> Vec<DirectedNetwork> {
    (0..300u64)
        .map(|i| {
            let n = 3 + (i % 6) as usize;
            let p = 0.1 * (1 + (i / 6) % 5) as f64;
            gnp_directed(n, p, 1000 + i).unwrap()
        })
        .collect()
}
