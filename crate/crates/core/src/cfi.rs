//! CFI graphs over the complete base graph `K_k`.
//!
//! Every base edge `e` becomes two vertices `e^0`, `e^1` joined by an edge;
//! every base node `v` becomes one vertex `v^X` per subset `X` of its
//! incident edges, adjacent to `e^1` for `e` in `X` and to `e^0` for the
//! other incident edges. `X_T` keeps the `v^X` with `|X|` odd exactly
//! when `v` is in `T`; two such graphs are isomorphic iff `|T|` and `|U|`
//! have equal parity.
//!
//! Vertex ids: edge vertices first (edges in lexicographic order, `e^0`
//! before `e^1`), then node vertices by node, subsets in binary-counter
//! order over the node's incident edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, NodeSet};

/// Largest vertex count `k(k-1) + k 2^(k-1)` accepted.
pub const MAX_CFI_VERTICES: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CfiVertex {
    Edge {
        edge: (usize, usize),
        bit: u8,
    },
    Node {
        node: usize,
        subset: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone)]
pub struct CfiGraph {
    pub graph: ColoredGraph,
    pub labels: Vec<CfiVertex>,
    /// Id of every vertex in the full enlarged graph.
    pub source: Vec<usize>,
}

/// Vertex layout of the enlarged graph for one `k`.
struct Layout {
    k: usize,
    edges: Vec<(usize, usize)>,
}

impl Layout {
    fn new(k: usize) -> Result<Layout> {
        if k < 3 {
            return Err(Error::InvalidParams(format!("CFI needs k >= 3, got {k}")));
        }
        let size = (k as u128) * (k as u128 - 1)
            + (k as u128).checked_shl(k as u32 - 1).unwrap_or(u128::MAX);
        if k >= 64 || size > MAX_CFI_VERTICES {
            return Err(Error::Guard {
                what: "CFI vertex count",
                value: size,
                limit: MAX_CFI_VERTICES,
            });
        }
        let edges = (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .collect();
        Ok(Layout { k, edges })
    }

    fn edge_index(&self, e: (usize, usize)) -> usize {
        let (u, v) = if e.0 < e.1 { e } else { (e.1, e.0) };
        // Edges (u, *) start after all edges of lower endpoints.
        u * self.k - u * (u + 1) / 2 + (v - u - 1)
    }

    /// Incident edges of `v`, lexicographically.
    fn incident(&self, v: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(a, b)| a == v || b == v)
            .collect()
    }

    fn subsets_per_node(&self) -> usize {
        1 << (self.k - 1)
    }

    fn edge_vertex(&self, e: usize, bit: u8) -> usize {
        2 * e + bit as usize
    }

    fn node_vertex(&self, v: usize, mask: usize) -> usize {
        2 * self.edges.len() + v * self.subsets_per_node() + mask
    }

    fn vertex_count(&self) -> usize {
        2 * self.edges.len() + self.k * self.subsets_per_node()
    }
}

/// The full enlarged graph `X(K_k)`.
pub fn cfi_expand(k: usize) -> Result<CfiGraph> {
    let layout = Layout::new(k)?;
    let total = layout.vertex_count();
    let mut labels = Vec::with_capacity(total);
    let mut colors = Vec::with_capacity(total);
    let mut adjacency = Vec::new();
    for (e, &edge) in layout.edges.iter().enumerate() {
        for bit in 0..2 {
            labels.push(CfiVertex::Edge { edge, bit });
            colors.push((k + e) as u32);
        }
        adjacency.push((layout.edge_vertex(e, 0), layout.edge_vertex(e, 1)));
    }
    for v in 0..k {
        let incident = layout.incident(v);
        for mask in 0..layout.subsets_per_node() {
            let me = layout.node_vertex(v, mask);
            let mut subset = Vec::new();
            for (j, &edge) in incident.iter().enumerate() {
                let inside = mask >> j & 1 == 1;
                if inside {
                    subset.push(edge);
                }
                adjacency.push((
                    me,
                    layout.edge_vertex(layout.edge_index(edge), inside as u8),
                ));
            }
            labels.push(CfiVertex::Node { node: v, subset });
            colors.push(v as u32);
        }
    }
    Ok(CfiGraph {
        graph: ColoredGraph::with_colors(total, adjacency, colors)?,
        labels,
        source: (0..total).collect(),
    })
}

/// The induced subgraph `X_T(K_k)`.
pub fn cfi_subgraph(k: usize, t: &[usize]) -> Result<CfiGraph> {
    if let Some(&bad) = t.iter().find(|&&v| v >= k) {
        return Err(Error::NodeOutOfRange { id: bad, n: k });
    }
    let full = cfi_expand(k)?;
    let keep: Vec<usize> = (0..full.labels.len())
        .filter(|&i| match &full.labels[i] {
            CfiVertex::Edge { .. } => true,
            CfiVertex::Node { node, subset } => (subset.len() % 2 == 1) == t.contains(node),
        })
        .collect();
    let set = NodeSet::new(keep.iter().map(|&i| i as u32))?;
    Ok(CfiGraph {
        graph: full.graph.induced_subgraph(&set)?,
        labels: keep.iter().map(|&i| full.labels[i].clone()).collect(),
        source: keep,
    })
}

/// `(X_∅, X_{v1})` with `v1` the first base node: a non-isomorphic pair.
pub fn cfi_pair(k: usize) -> Result<(CfiGraph, CfiGraph)> {
    Ok((cfi_subgraph(k, &[])?, cfi_subgraph(k, &[0])?))
}

/// The automorphism of `X(K_k)` that swaps `e^0` and `e^1` for every
/// `e` in `flipped`, as a permutation usable with `ColoredGraph::permute`.
pub fn cfi_flip_map(k: usize, flipped: &[(usize, usize)]) -> Result<Vec<usize>> {
    let layout = Layout::new(k)?;
    let mut flip = vec![false; layout.edges.len()];
    for &(u, v) in flipped {
        if u == v || u >= k || v >= k {
            return Err(Error::InvalidParams(format!(
                "({u}, {v}) is not an edge of K_{k}"
            )));
        }
        flip[layout.edge_index((u, v))] = true;
    }
    let mut perm = vec![0usize; layout.vertex_count()];
    for (e, &f) in flip.iter().enumerate() {
        for bit in 0..2u8 {
            perm[layout.edge_vertex(e, bit)] = layout.edge_vertex(e, bit ^ f as u8);
        }
    }
    for v in 0..k {
        let toggle = layout
            .incident(v)
            .iter()
            .enumerate()
            .filter(|&(_, &edge)| flip[layout.edge_index(edge)])
            .fold(0usize, |acc, (j, _)| acc | 1 << j);
        for mask in 0..layout.subsets_per_node() {
            perm[layout.node_vertex(v, mask)] = layout.node_vertex(v, mask ^ toggle);
        }
    }
    Ok(perm)
}
