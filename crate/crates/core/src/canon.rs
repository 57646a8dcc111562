//! Exact canonical certificates for small colored graphs.
//!
//! The search is a plain individualization-refinement tree: refine the
//! ordered partition (initially by color) to an equitable one, branch on
//! every vertex of the first non-singleton cell, and keep the smallest
//! encoding found at the discrete leaves. Every step is isomorphism
//! invariant, so the minimum is a canonical form.

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// Largest graph accepted by [`canonical_certificate`].
pub const MAX_CERTIFIED_NODES: usize = 12;

/// Canonical byte encoding: node count, colors in canonical order
/// (little-endian `u32`), then the upper-triangle adjacency bits packed
/// row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_certificate(g: &ColoredGraph) -> Result<Certificate> {
    let n = g.node_count();
    if n > MAX_CERTIFIED_NODES {
        return Err(Error::Guard {
            what: "certificate node count",
            value: n as u128,
            limit: MAX_CERTIFIED_NODES as u128,
        });
    }
    let mut cells = rank(&g.colors().iter().map(|&c| vec![c]).collect::<Vec<_>>());
    refine(g, &mut cells);
    let mut best: Option<Vec<u8>> = None;
    search(g, cells, &mut best);
    Ok(Certificate(best.unwrap_or_else(|| encode(g, &[]))))
}

/// Dense ranks of `keys` in sorted order.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn cell_count(cells: &[u32]) -> usize {
    cells.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Refines to the coarsest equitable partition. Cell ranks are ordered by
/// (old cell, sorted neighbor cells), so ordering is invariant.
fn refine(g: &ColoredGraph, cells: &mut Vec<u32>) {
    let n = g.node_count();
    loop {
        let before = cell_count(cells);
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut around: Vec<u32> =
                    g.neighbors(v).iter().map(|&u| cells[u as usize]).collect();
                around.sort_unstable();
                (cells[v], around)
            })
            .collect();
        *cells = rank(&signatures);
        if cell_count(cells) == before {
            return;
        }
    }
}

fn search(g: &ColoredGraph, cells: Vec<u32>, best: &mut Option<Vec<u8>>) {
    let n = g.node_count();
    let count = cell_count(&cells);
    if count == n {
        let mut order = vec![0usize; n];
        for (v, &c) in cells.iter().enumerate() {
            order[c as usize] = v;
        }
        let code = encode(g, &order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut sizes = vec![0usize; count];
    for &c in &cells {
        sizes[c as usize] += 1;
    }
    let target = sizes.iter().position(|&s| s > 1).unwrap() as u32;
    for v in (0..n).filter(|&v| cells[v] == target) {
        let mut next: Vec<u32> = cells
            .iter()
            .enumerate()
            .map(|(u, &c)| {
                if c > target || (c == target && u != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        next[v] = target;
        refine(g, &mut next);
        search(g, next, best);
    }
}

fn encode(g: &ColoredGraph, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(1 + 4 * n + n * n / 16 + 1);
    out.push(n as u8);
    for &v in order {
        out.extend_from_slice(&g.color(v).to_le_bytes());
    }
    let mut byte = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = byte << 1 | g.has_edge(order[i], order[j]) as u8;
            filled += 1;
            if filled == 8 {
                out.push(byte);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(byte << (8 - filled));
    }
    out
}
