//! Corpus generators and independent oracles shared by the integration
//! tests. Nothing here calls into the code under test except to build
//! graphs.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use setwl_core::{canonical_certificate, ColoredGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> ColoredGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph::new(n, edges).unwrap()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Degree-preserving double edge swaps.
pub fn rewire(rng: &mut impl Rng, g: &ColoredGraph, swaps: usize) -> ColoredGraph {
    let n = g.node_count();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut present: std::collections::HashSet<(usize, usize)> = edges.iter().copied().collect();
    if edges.len() < 2 {
        return g.clone();
    }
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    for _ in 0..swaps * 10 {
        let i = rng.random_range(0..edges.len());
        let j = rng.random_range(0..edges.len());
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.random_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if i == j
            || a == d
            || c == b
            || present.contains(&key(a, d))
            || present.contains(&key(c, b))
        {
            continue;
        }
        if a == c || b == d {
            continue;
        }
        present.remove(&edges[i]);
        present.remove(&edges[j]);
        edges[i] = key(a, d);
        edges[j] = key(c, b);
        present.insert(edges[i]);
        present.insert(edges[j]);
    }
    ColoredGraph::new(n, edges).unwrap()
}

/// Circulant graph on `n` nodes with the given jumps.
pub fn circulant(n: usize, jumps: &[usize]) -> ColoredGraph {
    let mut edges = std::collections::BTreeSet::new();
    for v in 0..n {
        for &j in jumps {
            let u = (v + j) % n;
            if u != v {
                edges.insert(if u < v { (u, v) } else { (v, u) });
            }
        }
    }
    ColoredGraph::new(n, edges).unwrap()
}

/// Component count by union-find, independent of the library.
pub fn union_find_components(g: &ColoredGraph, members: &[u32]) -> usize {
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if g.has_edge(members[i] as usize, members[j] as usize) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..members.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

/// Every uncolored graph on `n` nodes up to isomorphism, one
/// representative per class.
pub fn all_graphs(n: usize) -> Vec<ColoredGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = HashMap::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = ColoredGraph::new(n, edges).unwrap();
        seen.entry(canonical_certificate(&g).unwrap()).or_insert(g);
    }
    let mut out: Vec<ColoredGraph> = seen.into_values().collect();
    out.sort_by_key(|g| (g.edge_count(), g.edge_set()));
    out
}

/// Whether equal codes in `fine` imply equal codes in `coarse`.
pub fn refines<A: Eq + std::hash::Hash + Clone, B: Eq + Clone>(fine: &[A], coarse: &[B]) -> bool {
    assert_eq!(fine.len(), coarse.len());
    let mut image: HashMap<A, B> = HashMap::new();
    fine.iter()
        .zip(coarse)
        .all(|(f, c)| image.entry(f.clone()).or_insert_with(|| c.clone()) == c)
}

pub fn same_partition(a: &[u32], b: &[u32]) -> bool {
    refines(a, b) && refines(b, a)
}

pub fn binomial(n: u64, r: u64) -> u128 {
    // Pascal's rule row by row.
    if r > n {
        return 0;
    }
    let mut row = vec![0u128; r as usize + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=r.min(i) as usize).rev() {
            row[j] += row[j - 1];
        }
    }
    row[r as usize]
}

/// Number of injective edge-preserving maps from `pattern` into `g`.
pub fn injective_homomorphisms(pattern: &ColoredGraph, g: &ColoredGraph) -> u64 {
    fn extend(p: &ColoredGraph, g: &ColoredGraph, map: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let i = map.len();
        if i == p.node_count() {
            return 1;
        }
        let mut total = 0;
        for v in 0..g.node_count() {
            if used[v] {
                continue;
            }
            if (0..i).all(|j| !p.has_edge(i, j) || g.has_edge(map[j], v)) {
                map.push(v);
                used[v] = true;
                total += extend(p, g, map, used);
                used[v] = false;
                map.pop();
            }
        }
        total
    }
    extend(
        pattern,
        g,
        &mut Vec::new(),
        &mut vec![false; g.node_count()],
    )
}

/// Random non-isomorphic pairs on 6..=12 nodes with equal degree
/// sequences. Half are regular, so color refinement cannot separate them.
pub fn hard_pairs(count: usize, seed: u64) -> Vec<(ColoredGraph, ColoredGraph)> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(6..=12);
        let g = if out.len() % 2 == 0 {
            let jumps: &[usize] =
                [&[1usize][..], &[1, 2], &[1, 3], &[2, 3]][rng.random_range(0..4)];
            let base = circulant(n, jumps);
            rewire(&mut rng, &base, base.edge_count())
        } else {
            let p = [0.2, 0.3, 0.5][rng.random_range(0..3)];
            random_graph(&mut rng, n, p)
        };
        let swaps = rng.random_range(1..=3);
        let h = rewire(&mut rng, &g, swaps);
        if !setwl_core::brute_force_isomorphic(&g, &h).unwrap() {
            out.push((g, h));
        }
    }
    out
}

/// Proptest strategy for graphs on `min_n..=max_n` nodes with up to
/// `colors` node colors.
pub fn graph_strategy(
    min_n: usize,
    max_n: usize,
    colors: u32,
) -> impl proptest::strategy::Strategy<Value = ColoredGraph> {
    use proptest::prelude::*;
    (min_n..=max_n, 0.0f64..1.0)
        .prop_flat_map(move |(n, p)| {
            let pairs = n * n.saturating_sub(1) / 2;
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(p.clamp(0.05, 0.95)), pairs),
                proptest::collection::vec(0..colors.max(1), n),
            )
        })
        .prop_map(|(n, bits, colors)| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            ColoredGraph::with_colors(n, edges, colors).unwrap()
        })
}

/// A graph together with a permutation of its nodes.
pub fn permuted_strategy(
    min_n: usize,
    max_n: usize,
    colors: u32,
) -> impl proptest::strategy::Strategy<Value = (ColoredGraph, Vec<usize>)> {
    use proptest::prelude::*;
    graph_strategy(min_n, max_n, colors).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}
