//! Construction of the layered supergraph over (k,c)-sets: every node set
//! of size at most `k` whose induced subgraph has at most `c` connected
//! components, joined to its one-larger supersets by bipartite edges.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, NodeSet};

/// All stored sets of one size, flattened with stride `m` and kept in
/// ascending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    m: usize,
    members: Vec<u32>,
    components: Vec<u8>,
}

impl Layer {
    /// Layer 1: every node on its own.
    pub fn singletons(n: usize) -> Layer {
        Layer {
            m: 1,
            members: (0..n as u32).collect(),
            components: vec![1; n],
        }
    }

    /// Set size of this layer.
    pub fn set_size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn set(&self, i: usize) -> &[u32] {
        &self.members[i * self.m..(i + 1) * self.m]
    }

    pub fn components(&self, i: usize) -> usize {
        self.components[i] as usize
    }

    pub fn component_counts(&self) -> &[u8] {
        &self.components
    }

    pub fn sets(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.members.chunks_exact(self.m.max(1)).take(self.len())
    }

    /// Index of `set` (sorted members) within the layer.
    pub fn find(&self, set: &[u32]) -> Option<usize> {
        if set.len() != self.m {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.set(mid).cmp(set) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn node_sets(&self) -> Vec<NodeSet> {
        self.sets()
            .map(|s| NodeSet::new(s.iter().copied()).expect("stored sets are valid"))
            .collect()
    }
}

/// `parent` indexes layer `m`, `child` layer `m + 1`, and
/// `set(parent) ∪ {added} == set(child)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BipartiteEdge {
    pub parent: u32,
    pub child: u32,
    pub added: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Csr {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Csr {
    fn build(len: usize, pairs: impl Iterator<Item = (u32, u32)> + Clone) -> Csr {
        let mut offsets = vec![0u32; len + 1];
        for (from, _) in pairs.clone() {
            offsets[from as usize + 1] += 1;
        }
        for i in 0..len {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[len] as usize];
        for (from, to) in pairs {
            targets[fill[from as usize] as usize] = to;
            fill[from as usize] += 1;
        }
        Csr { offsets, targets }
    }

    fn get(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

/// Reference to a stored set: its size `m` (1-based layer) and its index
/// within that layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SetRef {
    pub m: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperGraph {
    n: usize,
    k: usize,
    c: usize,
    layers: Vec<Layer>,
    bipartite: Vec<Vec<BipartiteEdge>>,
    right: Vec<Csr>,
    left: Vec<Csr>,
}

pub fn validate_kc(k: usize, c: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if c == 0 || c > k {
        return Err(Error::InvalidParams(format!(
            "c must lie in 1..={k}, got {c}"
        )));
    }
    Ok(())
}

/// Grows the next layer from `layer`: every set gains each node adjacent to
/// it, and also each non-adjacent node while it has fewer than `c`
/// components. Returns the deduplicated layer and every generating triple.
pub fn extend_layer(g: &ColoredGraph, layer: &Layer, c: usize) -> (Layer, Vec<BipartiteEdge>) {
    let n = g.node_count();
    let m = layer.set_size();

    let mut candidates: Vec<(Vec<u32>, u8, u32, u32)> = (0..layer.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let set = layer.set(i);
            let mut adjacent = vec![false; n];
            for &v in set {
                for &u in g.neighbors(v as usize) {
                    adjacent[u as usize] = true;
                }
            }
            let may_split = layer.components(i) < c;
            let mut out = Vec::new();
            for x in 0..n as u32 {
                if set.binary_search(&x).is_ok() || !(adjacent[x as usize] || may_split) {
                    continue;
                }
                let mut grown = Vec::with_capacity(m + 1);
                let at = set.partition_point(|&v| v < x);
                grown.extend_from_slice(&set[..at]);
                grown.push(x);
                grown.extend_from_slice(&set[at..]);
                // A bridging node merges components, so the count is
                // recomputed rather than carried over from the parent.
                let comps = g.component_count(&grown) as u8;
                out.push((grown, comps, i as u32, x));
            }
            out.into_iter()
        })
        .collect();
    candidates.par_sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.2.cmp(&b.2)));

    let mut next = Layer {
        m: m + 1,
        members: Vec::new(),
        components: Vec::new(),
    };
    let mut edges = Vec::with_capacity(candidates.len());
    for (set, comps, parent, added) in candidates {
        let is_new = next.is_empty() || next.set(next.len() - 1) != set.as_slice();
        if is_new {
            next.members.extend_from_slice(&set);
            next.components.push(comps);
        }
        edges.push(BipartiteEdge {
            parent,
            child: (next.len() - 1) as u32,
            added,
        });
    }
    edges.sort_unstable();
    (next, edges)
}

pub fn build_supergraph(g: &ColoredGraph, k: usize, c: usize) -> Result<SuperGraph> {
    validate_kc(k, c)?;
    let n = g.node_count();
    let depth = k.min(n);
    let mut layers = Vec::with_capacity(depth);
    let mut bipartite = Vec::with_capacity(depth.saturating_sub(1));
    if depth > 0 {
        layers.push(Layer::singletons(n));
    }
    while layers.len() < depth {
        let (next, edges) = extend_layer(g, layers.last().unwrap(), c);
        layers.push(next);
        bipartite.push(edges);
    }

    #[cfg(debug_assertions)]
    for layer in &layers {
        for (i, set) in layer.sets().enumerate() {
            debug_assert_eq!(layer.components(i), g.component_count(set));
        }
    }

    let mut right = Vec::with_capacity(layers.len());
    let mut left = Vec::with_capacity(layers.len());
    for (li, layer) in layers.iter().enumerate() {
        right.push(match bipartite.get(li) {
            Some(edges) => Csr::build(layer.len(), edges.iter().map(|e| (e.parent, e.child))),
            None => Csr::build(layer.len(), std::iter::empty()),
        });
        left.push(match li.checked_sub(1).map(|p| &bipartite[p]) {
            Some(edges) => Csr::build(layer.len(), edges.iter().map(|e| (e.child, e.parent))),
            None => Csr::build(layer.len(), std::iter::empty()),
        });
    }

    Ok(SuperGraph {
        n,
        k,
        c,
        layers,
        bipartite,
        right,
        left,
    })
}

impl SuperGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Stored layers, index `m - 1` holding the `m`-sets. Fewer than `k`
    /// when the input has fewer than `k` nodes.
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, m: usize) -> Option<&Layer> {
        m.checked_sub(1).and_then(|i| self.layers.get(i))
    }

    /// Edges between the `m`-sets and the `(m+1)`-sets at index `m - 1`.
    pub fn bipartite(&self) -> &[Vec<BipartiteEdge>] {
        &self.bipartite
    }

    /// Supersets (indices into the next layer) of set `i` in layer index `li`.
    pub fn right_neighbors(&self, li: usize, i: usize) -> &[u32] {
        self.right[li].get(i)
    }

    /// Subsets (indices into the previous layer) of set `i` in layer index `li`.
    pub fn left_neighbors(&self, li: usize, i: usize) -> &[u32] {
        self.left[li].get(i)
    }

    pub fn set(&self, r: SetRef) -> &[u32] {
        self.layers[r.m - 1].set(r.index)
    }

    pub fn total_sets(&self) -> usize {
        self.layers.iter().map(Layer::len).sum()
    }

    pub fn total_edges(&self) -> usize {
        self.bipartite.iter().map(Vec::len).sum()
    }
}

/// Single-component constituents of every multi-component set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    parts: Vec<Vec<Option<Vec<SetRef>>>>,
}

impl ComponentMap {
    pub fn parts(&self, r: SetRef) -> Option<&[SetRef]> {
        self.parts
            .get(r.m.wrapping_sub(1))
            .and_then(|layer| layer.get(r.index))
            .and_then(|p| p.as_deref())
    }

    /// Multi-component sets with their parts, by ascending layer and index.
    pub fn iter(&self) -> impl Iterator<Item = (SetRef, &[SetRef])> + '_ {
        self.parts.iter().enumerate().flat_map(|(li, layer)| {
            layer.iter().enumerate().filter_map(move |(index, p)| {
                p.as_deref().map(|p| (SetRef { m: li + 1, index }, p))
            })
        })
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Links each multi-component set to its connected pieces, layer by layer,
/// reusing the decomposition of a parent set.
///
/// The parent is chosen by component count: one with the same count means
/// the added node joined exactly one existing piece; otherwise a parent
/// with one fewer component means the added node stands alone. Such a
/// parent always exists among the stored sets.
pub fn build_component_map(sg: &SuperGraph) -> ComponentMap {
    let mut parts: Vec<Vec<Option<Vec<SetRef>>>> =
        sg.layers.iter().map(|l| vec![None; l.len()]).collect();
    for (gap, edges) in sg.bipartite.iter().enumerate() {
        let (lower, upper) = (&sg.layers[gap], &sg.layers[gap + 1]);
        let mut start = 0;
        // Edges are sorted by parent; group them by child instead.
        let mut by_child: Vec<&BipartiteEdge> = edges.iter().collect();
        by_child.sort_unstable_by_key(|e| (e.child, e.parent));
        while start < by_child.len() {
            let child = by_child[start].child as usize;
            let mut end = start;
            while end < by_child.len() && by_child[end].child as usize == child {
                end += 1;
            }
            let group = &by_child[start..end];
            start = end;
            let comps = upper.components(child);
            if comps < 2 {
                continue;
            }
            let same = group
                .iter()
                .find(|e| lower.components(e.parent as usize) == comps);
            let mut decomposition = if let Some(e) = same {
                parts[gap][e.parent as usize]
                    .as_ref()
                    .expect("a parent with >= 2 components is decomposed")
                    .iter()
                    .map(|&p| extend_part(sg, p, e.added).unwrap_or(p))
                    .collect::<Vec<_>>()
            } else {
                let e = group
                    .iter()
                    .find(|e| lower.components(e.parent as usize) + 1 == comps)
                    .expect("some parent drops exactly the isolated node");
                let mut p = parts[gap][e.parent as usize].clone().unwrap_or_else(|| {
                    vec![SetRef {
                        m: gap + 1,
                        index: e.parent as usize,
                    }]
                });
                p.push(SetRef {
                    m: 1,
                    index: e.added as usize,
                });
                p
            };
            decomposition.sort_unstable();
            parts[gap + 1][child] = Some(decomposition);
        }
    }
    ComponentMap { parts }
}

/// `part ∪ {added}` when that set is stored and connected.
fn extend_part(sg: &SuperGraph, part: SetRef, added: u32) -> Option<SetRef> {
    let layer = sg.layer(part.m + 1)?;
    let mut grown = sg.set(part).to_vec();
    let at = grown.partition_point(|&v| v < added);
    grown.insert(at, added);
    let index = layer.find(&grown)?;
    (layer.components(index) == 1).then_some(SetRef {
        m: part.m + 1,
        index,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupergraphStats {
    /// Set counts for `m = 1..=k`; zero for layers beyond `n`.
    pub set_counts: Vec<u128>,
    /// Bipartite edge counts between layers `m` and `m + 1`, `m = 1..k`.
    pub edge_counts: Vec<u128>,
    pub total_sets: u128,
    pub total_edges: u128,
}

pub fn supergraph_stats(sg: &SuperGraph) -> SupergraphStats {
    let mut set_counts = vec![0u128; sg.k];
    for (i, layer) in sg.layers.iter().enumerate() {
        set_counts[i] = layer.len() as u128;
    }
    let mut edge_counts = vec![0u128; sg.k - 1];
    for (i, edges) in sg.bipartite.iter().enumerate() {
        edge_counts[i] = edges.len() as u128;
    }
    SupergraphStats {
        total_sets: set_counts.iter().sum(),
        total_edges: edge_counts.iter().sum(),
        set_counts,
        edge_counts,
    }
}

/// Exact sizes of the dense set supergraph (all sets, `c = k`) next to the
/// k-tuple supergraph, for `n` nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseCounts {
    pub n: u64,
    pub k: u64,
    /// Sum of C(n, i) for i = 1..=k.
    pub supernodes: u128,
    /// Sum of i * C(n, i) for i = 2..=k.
    pub bipartite_edges: u128,
    /// n^k.
    pub kwl_nodes: u128,
    /// k * n^(k+1) / 2, rounded down when the product is odd.
    pub kwl_edges: u128,
    /// Whether the closed-form upper bound on `supernodes` holds; `None`
    /// when `k > n / 2`, where the bound does not apply.
    pub bound_holds: Option<bool>,
}

impl DenseCounts {
    pub fn node_ratio(&self) -> f64 {
        self.kwl_nodes as f64 / self.supernodes as f64
    }

    /// Uses the unrounded k * n^(k+1) / 2.
    pub fn edge_ratio(&self) -> f64 {
        let doubled = self.k as f64 * (self.n as f64).powi(self.k as i32 + 1);
        doubled / 2.0 / self.bipartite_edges as f64
    }
}

pub fn binomial(n: u64, r: u64) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i + 1) as u128;
    }
    Ok(acc)
}

/// Checks sum_{i=1..k} C(n,i) <= C(n,k) (n-k+1)/(n-2k+1) exactly, in
/// integers. Requires `1 <= k <= n / 2`.
pub fn binomial_sum_bound_holds(n: u64, k: u64) -> Result<bool> {
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidParams(format!(
            "bound needs 1 <= k <= n/2, got n={n}, k={k}"
        )));
    }
    let mut sum: u128 = 0;
    for i in 1..=k {
        sum = sum
            .checked_add(binomial(n, i)?)
            .ok_or(Error::Overflow("binomial sum"))?;
    }
    let lhs = sum
        .checked_mul((n - 2 * k + 1) as u128)
        .ok_or(Error::Overflow("binomial bound"))?;
    let rhs = binomial(n, k)?
        .checked_mul((n - k + 1) as u128)
        .ok_or(Error::Overflow("binomial bound"))?;
    Ok(lhs <= rhs)
}

pub fn dense_counts(n: u64, k: u64) -> Result<DenseCounts> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let overflow = |what| move || Error::Overflow(what);
    let mut supernodes: u128 = 0;
    let mut bipartite_edges: u128 = 0;
    for i in 1..=k {
        let b = binomial(n, i)?;
        supernodes = supernodes
            .checked_add(b)
            .ok_or_else(overflow("supernode count"))?;
        if i >= 2 {
            let e = b
                .checked_mul(i as u128)
                .ok_or_else(overflow("edge count"))?;
            bipartite_edges = bipartite_edges
                .checked_add(e)
                .ok_or_else(overflow("edge count"))?;
        }
    }
    let kwl_nodes = (n as u128)
        .checked_pow(k as u32)
        .ok_or_else(overflow("n^k"))?;
    let kwl_edges = kwl_nodes
        .checked_mul(n as u128)
        .and_then(|x| x.checked_mul(k as u128))
        .ok_or_else(overflow("k n^(k+1)"))?
        / 2;
    let bound_holds = if 2 * k <= n {
        Some(binomial_sum_bound_holds(n, k)?)
    } else {
        None
    };
    Ok(DenseCounts {
        n,
        k,
        supernodes,
        bipartite_edges,
        kwl_nodes,
        kwl_edges,
        bound_holds,
    })
}

/// JSON export of a supergraph. `layer` fields hold the set size `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SupergraphExport {
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub layers: Vec<LayerExport>,
    pub bipartite: Vec<BipartiteExport>,
    pub component_map: Vec<ComponentExport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init_colors: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerExport {
    pub m: usize,
    pub sets: Vec<Vec<u32>>,
    pub components: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteExport {
    pub m: usize,
    pub edges: Vec<[u32; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentExport {
    pub layer: usize,
    pub index: usize,
    pub parts: Vec<[usize; 2]>,
}

impl SupergraphExport {
    pub fn new(sg: &SuperGraph, map: &ComponentMap, init_colors: Option<Vec<Vec<u32>>>) -> Self {
        SupergraphExport {
            n: sg.n,
            k: sg.k,
            c: sg.c,
            layers: sg
                .layers
                .iter()
                .map(|l| LayerExport {
                    m: l.m,
                    sets: l.sets().map(<[u32]>::to_vec).collect(),
                    components: l.components.clone(),
                })
                .collect(),
            bipartite: sg
                .bipartite
                .iter()
                .enumerate()
                .map(|(i, edges)| BipartiteExport {
                    m: i + 1,
                    edges: edges.iter().map(|e| [e.parent, e.child, e.added]).collect(),
                })
                .collect(),
            component_map: map
                .iter()
                .map(|(r, parts)| ComponentExport {
                    layer: r.m,
                    index: r.index,
                    parts: parts.iter().map(|p| [p.m, p.index]).collect(),
                })
                .collect(),
            init_colors,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets_of(layer: &Layer) -> Vec<Vec<u32>> {
        layer.sets().map(<[u32]>::to_vec).collect()
    }

    #[test]
    fn extend_path_connected_only() {
        let g = ColoredGraph::path(3);
        let (next, edges) = extend_layer(&g, &Layer::singletons(3), 1);
        assert_eq!(sets_of(&next), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(edges.len(), 4);
    }

    #[test]
    fn extend_path_two_components() {
        let g = ColoredGraph::path(3);
        let (next, edges) = extend_layer(&g, &Layer::singletons(3), 2);
        assert_eq!(sets_of(&next), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(next.component_counts(), &[1, 2, 1]);
        assert_eq!(edges.len(), 6);
    }

    #[test]
    fn extend_triangle_pairs() {
        let g = ColoredGraph::complete(3);
        let (pairs, _) = extend_layer(&g, &Layer::singletons(3), 1);
        let (top, edges) = extend_layer(&g, &pairs, 1);
        assert_eq!(sets_of(&top), vec![vec![0, 1, 2]]);
        assert_eq!(edges.len(), 3);
    }

    #[test]
    fn bridging_node_merges_components() {
        // {0,2} has two components; adding 1 joins them.
        let g = ColoredGraph::path(3);
        let sg = build_supergraph(&g, 3, 2).unwrap();
        assert_eq!(sg.layer(3).unwrap().component_counts(), &[1]);
    }

    #[test]
    fn layer_sizes() {
        let sizes = |g: &ColoredGraph, k, c| {
            build_supergraph(g, k, c)
                .unwrap()
                .layers()
                .iter()
                .map(Layer::len)
                .collect::<Vec<_>>()
        };
        assert_eq!(sizes(&ColoredGraph::path(3), 2, 1), vec![3, 2]);
        assert_eq!(sizes(&ColoredGraph::complete(3), 3, 1), vec![3, 3, 1]);
        assert_eq!(sizes(&ColoredGraph::empty(5), 3, 3), vec![5, 10, 10]);
    }

    #[test]
    fn k_beyond_n_stops_early() {
        let sg = build_supergraph(&ColoredGraph::complete(3), 5, 1).unwrap();
        assert_eq!(sg.layers().len(), 3);
        let stats = supergraph_stats(&sg);
        assert_eq!(stats.set_counts, vec![3, 3, 1, 0, 0]);
        assert_eq!(stats.edge_counts, vec![6, 3, 0, 0]);
    }

    #[test]
    fn invalid_parameters() {
        let g = ColoredGraph::path(3);
        assert!(build_supergraph(&g, 0, 1).is_err());
        assert!(build_supergraph(&g, 2, 0).is_err());
        assert!(build_supergraph(&g, 2, 3).is_err());
    }

    #[test]
    fn neighbors_follow_edges() {
        let sg = build_supergraph(&ColoredGraph::path(3), 2, 1).unwrap();
        assert_eq!(sg.right_neighbors(0, 1), &[0, 1]);
        assert_eq!(sg.left_neighbors(1, 0), &[0, 1]);
        assert_eq!(sg.left_neighbors(0, 0), &[] as &[u32]);
        assert_eq!(sg.right_neighbors(1, 0), &[] as &[u32]);
    }

    #[test]
    fn stats() {
        let stats = |g: &ColoredGraph, k, c| supergraph_stats(&build_supergraph(g, k, c).unwrap());
        let s = stats(&ColoredGraph::empty(5), 3, 3);
        assert_eq!(
            (s.set_counts, s.edge_counts),
            (vec![5, 10, 10], vec![20, 30])
        );
        let s = stats(&ColoredGraph::path(3), 2, 1);
        assert_eq!((s.set_counts, s.edge_counts), (vec![3, 2], vec![4]));
        let s = stats(&ColoredGraph::complete(3), 3, 1);
        assert_eq!((s.set_counts, s.edge_counts), (vec![3, 3, 1], vec![6, 3]));
        assert_eq!((s.total_sets, s.total_edges), (7, 9));
    }

    #[test]
    fn component_map_path() {
        let sg = build_supergraph(&ColoredGraph::path(3), 2, 2).unwrap();
        let map = build_component_map(&sg);
        assert_eq!(map.len(), 1);
        let split = SetRef { m: 2, index: 1 };
        assert_eq!(sg.set(split), &[0, 2]);
        assert_eq!(
            map.parts(split).unwrap(),
            &[SetRef { m: 1, index: 0 }, SetRef { m: 1, index: 2 }]
        );
        assert_eq!(map.parts(SetRef { m: 2, index: 0 }), None);
    }

    #[test]
    fn component_map_two_triangles() {
        let k3 = ColoredGraph::complete(3);
        let g = k3.disjoint_union(&k3);
        let sg = build_supergraph(&g, 4, 2).unwrap();
        let map = build_component_map(&sg);
        let four = sg.layer(4).unwrap();
        let owner = SetRef {
            m: 4,
            index: four.find(&[0, 1, 2, 4]).unwrap(),
        };
        let parts: Vec<&[u32]> = map
            .parts(owner)
            .unwrap()
            .iter()
            .map(|&p| sg.set(p))
            .collect();
        assert_eq!(parts, vec![&[4][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn component_map_with_cut_vertex_parent() {
        // Path 0-1-2 plus isolated 3 with c = 3: removing the middle node
        // of the path yields a stored 3-component parent.
        let g = ColoredGraph::new(4, [(0, 1), (1, 2)]).unwrap();
        let sg = build_supergraph(&g, 4, 3).unwrap();
        let map = build_component_map(&sg);
        let owner = SetRef { m: 4, index: 0 };
        let parts: Vec<&[u32]> = map
            .parts(owner)
            .unwrap()
            .iter()
            .map(|&p| sg.set(p))
            .collect();
        assert_eq!(parts, vec![&[3][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(30, 5).unwrap(), 142_506);
        assert_eq!(binomial(3, 4).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
    }

    #[test]
    fn dense_counts_examples() {
        let d = dense_counts(30, 5).unwrap();
        assert_eq!(d.supernodes, 174_436);
        assert_eq!(d.bipartite_edges, 835_200);
        assert_eq!(d.node_ratio().round(), 139.0);
        assert_eq!(d.edge_ratio().round(), 2182.0);
        assert_eq!(d.bound_holds, Some(true));

        let d = dense_counts(4, 1).unwrap();
        assert_eq!(
            (d.supernodes, d.bipartite_edges, d.kwl_nodes, d.kwl_edges),
            (4, 0, 4, 8)
        );
        assert!(dense_counts(3, 4).is_err());
        assert!(matches!(dense_counts(200, 100), Err(Error::Overflow(_))));
    }

    #[test]
    fn export_shape() {
        let sg = build_supergraph(&ColoredGraph::path(3), 2, 2).unwrap();
        let map = build_component_map(&sg);
        let export = SupergraphExport::new(&sg, &map, None);
        assert_eq!(
            export.layers[1].sets,
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(export.bipartite[0].m, 1);
        assert_eq!(export.component_map[0].parts, vec![[1, 0], [1, 2]]);
    }
}
