//! Shared fixtures and the enumeration oracle for integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcla_core::Graph;

pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// G(n, p) with its own seeded stream.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(n, pairs).unwrap()
}

/// The fixed oracle suite: 200 G(n, p) graphs with n in [4, 12] and
/// p cycling through {0.2, 0.5, 0.8}.
pub fn oracle_suite() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    (0..200)
        .map(|i| {
            let n = rng.gen_range(4..=12);
            let p = [0.2, 0.5, 0.8][i % 3];
            erdos_renyi(n, p, 1_000 + i as u64)
        })
        .collect()
}

/// Minimum vertex cover size by trying all 2^n subsets. Works from the raw
/// edge list only.
pub fn brute_force_min_cover(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "enumeration oracle is for tiny graphs");
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(u, v)| (1 << u, 1 << v)).collect();
    (0u32..1 << n)
        .filter(|&mask| edges.iter().all(|&(a, b)| mask & (a | b) != 0))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}
