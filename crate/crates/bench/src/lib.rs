//! Shared inputs for the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setwl_core::graph::ColoredGraph;

/// Erdős–Rényi graph G(n, p) from a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> ColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph::new(n, edges).expect("generated edges are valid")
}
