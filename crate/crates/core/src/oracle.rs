//! Brute-force ground truth for small graphs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, NodeSet};

pub const MAX_ISO_NODES: usize = 16;
pub const MAX_ENUM_NODES: usize = 20;
pub const MAX_ENUM_K: usize = 5;
pub const MAX_PATTERN_NODES: usize = 64;

fn check(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::Guard {
            what,
            value: value as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Exact colored isomorphism test by backtracking.
pub fn brute_force_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> Result<bool> {
    check("isomorphism node count", a.node_count(), MAX_ISO_NODES)?;
    check("isomorphism node count", b.node_count(), MAX_ISO_NODES)?;
    let n = a.node_count();
    if n != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let signature = |g: &ColoredGraph| {
        let mut s: Vec<(u32, usize)> = (0..n).map(|v| (g.color(v), g.degree(v))).collect();
        s.sort_unstable();
        s
    };
    if signature(a) != signature(b) {
        return Ok(false);
    }

    // Place vertices of `a` so each one has as many placed neighbors as
    // possible, which lets adjacency checks prune early.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = a
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| placed[u as usize])
                    .count();
                (links, a.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    // Candidates in `b`, ordered by (color, degree).
    let mut candidates: Vec<usize> = (0..n).collect();
    candidates.sort_by_key(|&v| (b.color(v), b.degree(v), v));

    fn extend(
        a: &ColoredGraph,
        b: &ColoredGraph,
        order: &[usize],
        candidates: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for &w in candidates {
            if used[w] || a.color(v) != b.color(w) || a.degree(v) != b.degree(w) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(a, b, order, candidates, depth + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(a, b, &order, &candidates, 0, &mut map, &mut used))
}

/// All sets of size `1..=k` whose induced subgraph has at most `c`
/// components, by direct subset enumeration. Sorted by size, then
/// lexicographically.
pub fn enumerate_kc_sets(g: &ColoredGraph, k: usize, c: usize) -> Result<Vec<NodeSet>> {
    let n = g.node_count();
    check("enumeration node count", n, MAX_ENUM_NODES)?;
    check("enumeration set size", k, MAX_ENUM_K)?;
    let mut out: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if mask.count_ones() as usize > k {
            continue;
        }
        let members: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
        let set = NodeSet::new(members.iter().copied())?;
        if g.connected_components(&set)?.count <= c {
            out.push(members);
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out.into_iter().map(NodeSet::new).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    Triangle,
    TailedTriangle,
    Star3,
    Cycle4,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::Triangle,
        Pattern::TailedTriangle,
        Pattern::Star3,
        Pattern::Cycle4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Triangle => "triangle",
            Pattern::TailedTriangle => "tailed_triangle",
            Pattern::Star3 => "star3",
            Pattern::Cycle4 => "cycle4",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown pattern {s:?}")))
    }
}

fn triangles(g: &ColoredGraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        for &w in g.neighbors(v) {
            let w = w as usize;
            if w > v && g.has_edge(u, w) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

/// Number of (not necessarily induced) subgraphs of `g` isomorphic to
/// the pattern.
pub fn count_pattern(g: &ColoredGraph, pattern: Pattern) -> Result<u64> {
    let n = g.node_count();
    check("pattern node count", n, MAX_PATTERN_NODES)?;
    let choose3 = |d: u64| d * d.saturating_sub(1) * d.saturating_sub(2) / 6;
    Ok(match pattern {
        Pattern::Triangle => triangles(g).len() as u64,
        Pattern::Star3 => (0..n).map(|v| choose3(g.degree(v) as u64)).sum(),
        // A tail hangs off one triangle vertex, at any neighbor outside
        // the triangle.
        Pattern::TailedTriangle => triangles(g)
            .iter()
            .flat_map(|t| t.iter().map(|&v| g.degree(v) as u64 - 2))
            .sum(),
        Pattern::Cycle4 => {
            let e = |x: usize, y: usize| g.has_edge(x, y);
            let mut count = 0u64;
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for d in c + 1..n {
                            // The three distinct 4-cycles on {a, b, c, d}.
                            count += (e(a, b) && e(b, c) && e(c, d) && e(d, a)) as u64;
                            count += (e(a, b) && e(b, d) && e(d, c) && e(c, a)) as u64;
                            count += (e(a, c) && e(c, b) && e(b, d) && e(d, a)) as u64;
                        }
                    }
                }
            }
            count
        }
    })
}
