//! Undirected vertex-colored simple graphs, node sets, and the primitives
//! the supergraph builder relies on: induced subgraphs, component
//! counting and relabeling.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An undirected simple graph on nodes `0..n` with one color per node.
///
/// Adjacency is kept both as sorted neighbor lists and as a bit matrix so
/// that `has_edge` is constant time; the graphs handled here are small.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    words: usize,
    matrix: Vec<u64>,
    neighbors: Vec<Vec<u32>>,
    colors: Vec<u32>,
    edge_count: usize,
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("colors", &self.colors)
            .finish()
    }
}

impl ColoredGraph {
    /// Builds an uncolored graph, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let words = n.div_ceil(64).max(1);
        let mut g = ColoredGraph {
            n,
            words,
            matrix: vec![0; n * words],
            neighbors: vec![Vec::new(); n],
            colors: vec![0; n],
            edge_count: 0,
        };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        for list in &mut g.neighbors {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a graph and assigns node colors in one go.
    pub fn with_colors(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        colors: Vec<u32>,
    ) -> Result<Self> {
        Self::new(n, edges)?.recolored(colors)
    }

    /// Returns a copy carrying `colors` instead of the current labels.
    pub fn recolored(mut self, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != self.n {
            return Err(Error::ColorCount {
                expected: self.n,
                got: colors.len(),
            });
        }
        self.colors = colors;
        Ok(self)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for id in [u, v] {
            if id >= self.n {
                return Err(Error::NodeOutOfRange { id, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.matrix[u * self.words + v / 64] |= 1 << (v % 64);
        self.matrix[v * self.words + u / 64] |= 1 << (u % 64);
        self.neighbors[u].push(v as u32);
        self.neighbors[v].push(u as u32);
        self.edge_count += 1;
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Sorted edge list, used for structural comparisons in tests.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Subgraph induced by `set`; node `i` of the result is the `i`-th
    /// member of `set` in ascending order.
    pub fn induced_subgraph(&self, set: &NodeSet) -> Result<ColoredGraph> {
        self.check_members(set.members())?;
        Ok(self.induced_unchecked(set.members()))
    }

    pub(crate) fn induced_unchecked(&self, members: &[u32]) -> ColoredGraph {
        let mut edges = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u as usize, v as usize) {
                    edges.push((i, j));
                }
            }
        }
        let colors = members.iter().map(|&v| self.colors[v as usize]).collect();
        ColoredGraph::with_colors(members.len(), edges, colors)
            .expect("induced subgraph of a valid graph is valid")
    }

    /// Connected components of the subgraph induced by `set`.
    pub fn connected_components(&self, set: &NodeSet) -> Result<ComponentPartition> {
        self.check_members(set.members())?;
        Ok(self.components_unchecked(set.members()))
    }

    pub(crate) fn components_unchecked(&self, members: &[u32]) -> ComponentPartition {
        let len = members.len();
        let mut part_of = vec![usize::MAX; len];
        let mut count = 0;
        let mut stack = Vec::with_capacity(len);
        for start in 0..len {
            if part_of[start] != usize::MAX {
                continue;
            }
            part_of[start] = count;
            stack.push(start);
            while let Some(i) = stack.pop() {
                let u = members[i] as usize;
                for j in 0..len {
                    if part_of[j] == usize::MAX && self.has_edge(u, members[j] as usize) {
                        part_of[j] = count;
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        ComponentPartition { count, part_of }
    }

    /// Number of connected components of the subgraph induced by
    /// `members`. Members must be in range.
    pub fn component_count(&self, members: &[u32]) -> usize {
        self.components_unchecked(members).count
    }

    fn check_members(&self, members: &[u32]) -> Result<()> {
        match members.iter().find(|&&v| v as usize >= self.n) {
            Some(&v) => Err(Error::NodeOutOfRange {
                id: v as usize,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    /// Relabels node `v` as `perm[v]`, carrying colors along.
    pub fn permute(&self, perm: &[usize]) -> Result<ColoredGraph> {
        if perm.len() != self.n {
            return Err(Error::NotAPermutation(format!(
                "length {} for {} nodes",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::NotAPermutation(format!(
                    "image {p} repeated or out of range"
                )));
            }
            seen[p] = true;
        }
        let mut colors = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            colors[p] = self.colors[v];
        }
        ColoredGraph::with_colors(
            self.n,
            self.edges().map(|(u, v)| (perm[u], perm[v])),
            colors,
        )
    }

    /// Disjoint union; nodes of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        let shift = self.n;
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        let colors = self.colors.iter().chain(&other.colors).copied().collect();
        ColoredGraph::with_colors(self.n + other.n, edges, colors).expect("union of valid graphs")
    }

    pub fn empty(n: usize) -> ColoredGraph {
        ColoredGraph::new(n, []).expect("edgeless graph")
    }

    pub fn path(n: usize) -> ColoredGraph {
        ColoredGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }

    pub fn cycle(n: usize) -> ColoredGraph {
        assert!(n >= 3, "cycles need at least 3 nodes");
        ColoredGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    pub fn complete(n: usize) -> ColoredGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        ColoredGraph::new(n, edges).expect("complete graph")
    }

    /// Star with one center (node 0) and `leaves` leaves.
    pub fn star(leaves: usize) -> ColoredGraph {
        ColoredGraph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star")
    }

    /// 4x4 rook's graph: cells of a 4x4 board, adjacent when sharing a row
    /// or a column. Strongly regular with parameters (16, 6, 2, 2).
    pub fn rook_4x4() -> ColoredGraph {
        let mut edges = Vec::new();
        for u in 0..16 {
            for v in u + 1..16 {
                if u / 4 == v / 4 || u % 4 == v % 4 {
                    edges.push((u, v));
                }
            }
        }
        ColoredGraph::new(16, edges).expect("rook graph")
    }

    /// Shrikhande graph as the Cayley graph of Z4 x Z4 with connection set
    /// {±(0,1), ±(1,0), ±(1,1)}. Same parameters as the 4x4 rook's graph.
    pub fn shrikhande() -> ColoredGraph {
        let steps = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)];
        let mut edges = Vec::new();
        for u in 0..16usize {
            let (a, b) = (u / 4, u % 4);
            for (da, db) in steps {
                let v = (a + da) % 4 * 4 + (b + db) % 4;
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        ColoredGraph::new(16, edges).expect("shrikhande graph")
    }

    /// Serializes to the edge-list format; the colors line is emitted only
    /// when some node carries a nonzero color or `force_colors` is set.
    pub fn to_edge_list(&self, force_colors: bool) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        if force_colors || self.colors.iter().any(|&c| c != 0) {
            out.push_str("colors");
            for c in &self.colors {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
        }
        out
    }

    /// Encodes the (uncolored) graph in graph6 for `n <= 62`.
    pub fn to_graph6(&self) -> Result<String> {
        if self.n > 62 {
            return Err(Error::Graph6(format!(
                "{} nodes exceeds the 62-node short form",
                self.n
            )));
        }
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        let mut bits = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                bits.push(self.has_edge(i, j));
            }
        }
        for chunk in bits.chunks(6) {
            let mut value = 0u8;
            for (pos, &b) in chunk.iter().enumerate() {
                if b {
                    value |= 1 << (5 - pos);
                }
            }
            out.push((value + 63) as char);
        }
        Ok(out)
    }
}

/// Sorted, duplicate-free, nonempty sequence of node ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSet(Vec<u32>);

impl NodeSet {
    /// Sorts the members; duplicates and empty input are rejected.
    pub fn new(members: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        if members.is_empty() {
            return Err(Error::InvalidNodeSet("empty".into()));
        }
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidNodeSet(format!("duplicate member {}", w[0])));
        }
        Ok(NodeSet(members))
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl From<NodeSet> for Vec<u32> {
    fn from(s: NodeSet) -> Self {
        s.0
    }
}

/// Connected components of an induced subgraph. `part_of[i]` is the
/// component of the `i`-th member of the set, numbered in order of first
/// appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub count: usize,
    pub part_of: Vec<usize>,
}

impl ComponentPartition {
    /// Members of each component, grouped.
    pub fn parts(&self, members: &[u32]) -> Vec<Vec<u32>> {
        let mut parts = vec![Vec::new(); self.count];
        for (i, &p) in self.part_of.iter().enumerate() {
            parts[p].push(members[i]);
        }
        parts
    }
}

/// Input formats accepted by [`load_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

/// Maps arbitrary color labels to dense ids in first-seen order. Share one
/// interner across every file of a joint comparison so equal labels get
/// equal ids.
#[derive(Debug, Default, Clone)]
pub struct LabelInterner {
    ids: HashMap<String, u32>,
}

impl LabelInterner {
    pub fn intern(&mut self, label: &str) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(label.to_owned()).or_insert(next)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

pub fn load_graph(data: &[u8], format: GraphFormat) -> Result<ColoredGraph> {
    load_graph_with(data, format, &mut LabelInterner::default())
}

pub fn load_graph_with(
    data: &[u8],
    format: GraphFormat,
    labels: &mut LabelInterner,
) -> Result<ColoredGraph> {
    match format {
        GraphFormat::EdgeList => {
            let text = std::str::from_utf8(data)
                .map_err(|e| Error::MalformedHeader(format!("not UTF-8: {e}")))?;
            parse_edge_list(text, labels)
        }
        GraphFormat::Graph6 => parse_graph6(data),
    }
}

/// Parses `n m`, then `m` lines of `u v`, then an optional
/// `colors c0 .. c(n-1)` line. Blank lines are skipped.
pub fn parse_edge_list(text: &str, labels: &mut LabelInterner) -> Result<ColoredGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty input".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(Error::MalformedHeader(format!(
            "expected \"n m\", got {header:?}"
        )));
    };
    let n: usize = n
        .parse()
        .map_err(|_| Error::MalformedHeader(format!("bad node count {n:?}")))?;
    let m: usize = m
        .parse()
        .map_err(|_| Error::MalformedHeader(format!("bad edge count {m:?}")))?;

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("header announced {m} edges, found {}", edges.len()),
        })?;
        let ends: Vec<&str> = text.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("bad node id {s:?}"),
            })
        };
        match ends[..] {
            [u, v] => edges.push((parse(u)?, parse(v)?)),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected \"u v\", got {text:?}"),
                })
            }
        }
    }

    let mut colors = vec![0; n];
    if let Some((line, text)) = lines.next() {
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some("colors") {
            return Err(Error::Parse {
                line,
                msg: format!("unexpected trailing line {text:?}"),
            });
        }
        let raw: Vec<&str> = tokens.collect();
        if raw.len() != n {
            return Err(Error::ColorCount {
                expected: n,
                got: raw.len(),
            });
        }
        colors = raw.iter().map(|l| labels.intern(l)).collect();
        if let Some((line, text)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: format!("unexpected trailing line {text:?}"),
            });
        }
    }

    ColoredGraph::with_colors(n, edges, colors)
}

/// Decodes the short (n <= 62) graph6 form. A leading `>>graph6<<` header
/// and surrounding whitespace are tolerated.
pub fn parse_graph6(data: &[u8]) -> Result<ColoredGraph> {
    let mut bytes = data.trim_ascii();
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
    }
    let (&first, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::BadGraph6Char { ch: b as char, pos });
        }
    }
    if first == 126 {
        return Err(Error::Graph6(
            "graphs with more than 62 nodes are not supported".into(),
        ));
    }
    let n = (first - 63) as usize;
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(Error::Graph6(format!(
            "{n} nodes need {needed} data bytes, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    ColoredGraph::new(n, edges)
}
