//! Reference implementations of the classical WL family, used as oracles
//! at small scale.
//!
//! Every variant refines a fixed list of elements per graph (nodes,
//! tuples, multisets or sets). Several graphs are always run jointly
//! against one [`ColorTable`], so codes can be compared across graphs.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_certificate;
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::refine::{first_difference, Outcome};
use crate::supergraph::binomial;
use crate::table::{class_count, ColorTable, Key, Tag};

/// Largest element count (tuples, multisets or sets) a reference run
/// accepts per graph.
pub const MAX_REFERENCE_ELEMENTS: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Color refinement over nodes; `k` is ignored.
    OneWl,
    KWl,
    KFwl,
    KMultisetWl,
    KSetFwl,
    /// Set refinement over all sets of size at most `k`, with the up,
    /// down and same-size swap neighborhoods made explicit.
    SetWl,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::OneWl,
        Variant::KWl,
        Variant::KFwl,
        Variant::KMultisetWl,
        Variant::KSetFwl,
        Variant::SetWl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::OneWl => "one-wl",
            Variant::KWl => "k-wl",
            Variant::KFwl => "k-fwl",
            Variant::KMultisetWl => "k-multiset-wl",
            Variant::KSetFwl => "k-set-fwl",
            Variant::SetWl => "set-wl",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown variant {s:?}")))
    }
}

/// Index of tuple `t` over `n` nodes, first position most significant.
pub fn tuple_index(t: &[u32], n: usize) -> usize {
    t.iter().fold(0, |acc, &v| acc * n + v as usize)
}

pub fn tuple_at(mut index: usize, n: usize, k: usize) -> Vec<u32> {
    let mut t = vec![0u32; k];
    for slot in t.iter_mut().rev() {
        *slot = (index % n) as u32;
        index /= n;
    }
    t
}

/// All non-decreasing `k`-sequences over `0..n`, lexicographically.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn extend(n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for v in start..n {
            cur.push(v);
            extend(n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        extend(n as u32, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All sets of size `1..=k`, by size and then lexicographically.
pub fn sets_up_to(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for m in 1..=k.min(n) {
        let mut cur: Vec<u32> = (0..m as u32).collect();
        loop {
            out.push(cur.clone());
            // Advance to the next m-combination.
            let Some(i) = (0..m).rev().find(|&i| (cur[i] as usize) < n - m + i) else {
                break;
            };
            cur[i] += 1;
            for j in i + 1..m {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    out
}

/// Distinct orderings of a sorted sequence, lexicographically.
pub fn arrangements(sorted: &[u32]) -> Vec<Vec<u32>> {
    fn extend(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut previous = None;
        for i in 0..rest.len() {
            if previous == Some(rest[i]) {
                continue;
            }
            previous = Some(rest[i]);
            let v = rest.remove(i);
            cur.push(v);
            extend(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    extend(&mut sorted.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn guard(what: &'static str, value: u128) -> Result<()> {
    if value > MAX_REFERENCE_ELEMENTS {
        return Err(Error::Guard {
            what,
            value,
            limit: MAX_REFERENCE_ELEMENTS,
        });
    }
    Ok(())
}

fn check_scale(variant: Variant, n: usize, k: usize) -> Result<()> {
    if k == 0 && variant != Variant::OneWl {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    match variant {
        Variant::OneWl => Ok(()),
        Variant::KWl | Variant::KFwl => {
            let count = (n as u128)
                .checked_pow(k as u32)
                .ok_or(Error::Overflow("tuple count"))?;
            guard("tuple count", count)
        }
        Variant::KMultisetWl | Variant::KSetFwl | Variant::SetWl => {
            guard("multiset count", binomial((n + k - 1) as u64, k as u64)?)
        }
    }
}

/// Element list for one graph, in code order.
fn elements(variant: Variant, n: usize, k: usize) -> Vec<Vec<u32>> {
    match variant {
        Variant::OneWl => (0..n as u32).map(|v| vec![v]).collect(),
        Variant::KWl | Variant::KFwl if k == 1 => (0..n as u32).map(|v| vec![v]).collect(),
        Variant::KWl | Variant::KFwl => (0..n.pow(k as u32)).map(|i| tuple_at(i, n, k)).collect(),
        Variant::KMultisetWl => multisets(n, k),
        Variant::KSetFwl | Variant::SetWl => sets_up_to(n, k),
    }
}

/// Pair-equality bits, adjacency bits and colors of an ordered tuple.
fn atomic_type(g: &ColoredGraph, t: &[u32]) -> Vec<u32> {
    let k = t.len();
    let mut out = Vec::with_capacity(k * (k - 1) + k);
    for i in 0..k {
        for j in i + 1..k {
            out.push((t[i] == t[j]) as u32);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            out.push(g.has_edge(t[i] as usize, t[j] as usize) as u32);
        }
    }
    out.extend(t.iter().map(|&v| g.color(v as usize)));
    out
}

fn certificate_key(g: &ColoredGraph, set: &[u32]) -> Result<Vec<u32>> {
    let cert = canonical_certificate(&g.induced_unchecked(set))?;
    let mut key = Key::new(Tag::Certificate);
    for &b in cert.as_bytes() {
        key.push(b as u32);
    }
    Ok(key.finish())
}

/// Per-graph lookup from element contents to element index.
struct Index<'a> {
    n: usize,
    elements: &'a [Vec<u32>],
    /// Start of each set size in `elements`, for the set variants.
    starts: Option<Vec<usize>>,
}

impl<'a> Index<'a> {
    fn new(variant: Variant, n: usize, k: usize, elements: &'a [Vec<u32>]) -> Self {
        let starts = matches!(variant, Variant::KSetFwl | Variant::SetWl).then(|| {
            (0..=k + 1)
                .map(|m| elements.partition_point(|e| e.len() < m))
                .collect()
        });
        Index {
            n,
            elements,
            starts,
        }
    }

    fn tuple(&self, t: &[u32]) -> usize {
        tuple_index(t, self.n)
    }

    fn sorted(&self, s: &[u32]) -> usize {
        let (lo, hi) = match &self.starts {
            Some(starts) => (starts[s.len()], starts[s.len() + 1]),
            None => (0, self.elements.len()),
        };
        lo + self.elements[lo..hi]
            .binary_search_by(|e| e.as_slice().cmp(s))
            .expect("element present")
    }
}

fn init_keys(
    variant: Variant,
    g: &ColoredGraph,
    k: usize,
    elems: &[Vec<u32>],
) -> Result<Vec<Vec<u32>>> {
    elems
        .par_iter()
        .map(|e| -> Result<Vec<u32>> {
            Ok(match variant {
                Variant::OneWl => {
                    let mut key = Key::new(Tag::NodeColor);
                    key.push(g.color(e[0] as usize));
                    key.finish()
                }
                Variant::KWl | Variant::KFwl if k == 1 => {
                    let mut key = Key::new(Tag::NodeColor);
                    key.push(g.color(e[0] as usize));
                    key.finish()
                }
                Variant::KWl | Variant::KFwl => {
                    let mut key = Key::new(Tag::AtomicType);
                    for w in atomic_type(g, e) {
                        key.push(w);
                    }
                    key.finish()
                }
                Variant::KMultisetWl => {
                    let flat: Vec<u32> = arrangements(e)
                        .iter()
                        .flat_map(|p| atomic_type(g, p))
                        .collect();
                    let width = k * (k - 1) + k;
                    let mut key = Key::new(Tag::MultisetInit);
                    key.multiset_of_tuples(&flat, width);
                    key.finish()
                }
                Variant::KSetFwl | Variant::SetWl => certificate_key(g, e)?,
            })
        })
        .collect()
}

/// Replaces position `i` of sorted set `s` by `x` and returns the sorted
/// result as a set (duplicates merged).
fn substitute_set(s: &[u32], i: usize, x: u32) -> Vec<u32> {
    let mut out: Vec<u32> = s
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect();
    if let Err(pos) = out.binary_search(&x) {
        out.insert(pos, x);
    }
    out
}

fn substitute_multiset(s: &[u32], i: usize, x: u32) -> Vec<u32> {
    let mut out = s.to_vec();
    out[i] = x;
    out.sort_unstable();
    out
}

fn update_keys(
    variant: Variant,
    g: &ColoredGraph,
    k: usize,
    index: &Index<'_>,
    cur: &[u32],
) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let nodes = 0..n as u32;
    index
        .elements
        .par_iter()
        .enumerate()
        .map(|(ei, e)| match variant {
            Variant::OneWl => one_wl_key(g, e[0], cur),
            Variant::KWl | Variant::KFwl if k == 1 => one_wl_key(g, e[0], cur),
            Variant::KWl => {
                let mut key = Key::new(Tag::TupleUpdate);
                key.push(cur[ei]);
                let mut t = e.clone();
                for i in 0..k {
                    let mut around: Vec<u32> = nodes
                        .clone()
                        .map(|x| {
                            t[i] = x;
                            cur[index.tuple(&t)]
                        })
                        .collect();
                    t[i] = e[i];
                    key.multiset(&mut around);
                }
                key.finish()
            }
            Variant::KFwl => {
                let mut flat = Vec::with_capacity(n * k);
                let mut t = e.clone();
                for x in nodes.clone() {
                    for i in 0..k {
                        t[i] = x;
                        flat.push(cur[index.tuple(&t)]);
                        t[i] = e[i];
                    }
                }
                let mut key = Key::new(Tag::FolkloreUpdate);
                key.push(cur[ei]).multiset_of_tuples(&flat, k);
                key.finish()
            }
            Variant::KMultisetWl => {
                let mut flat = Vec::with_capacity(n * k);
                for i in 0..k {
                    let mut inner: Vec<u32> = nodes
                        .clone()
                        .map(|x| cur[index.sorted(&substitute_multiset(e, i, x))])
                        .collect();
                    inner.sort_unstable();
                    flat.extend(inner);
                }
                let mut key = Key::new(Tag::MultisetUpdate);
                key.push(cur[ei]).multiset_of_tuples(&flat, n);
                key.finish()
            }
            Variant::KSetFwl => {
                let m = e.len();
                let mut flat = Vec::with_capacity(n * m);
                for x in nodes.clone() {
                    let mut inner: Vec<u32> = (0..m)
                        .map(|i| cur[index.sorted(&substitute_set(e, i, x))])
                        .collect();
                    inner.sort_unstable();
                    flat.extend(inner);
                }
                let mut key = Key::new(Tag::SetFolkloreUpdate);
                key.push(cur[ei]).multiset_of_tuples(&flat, m);
                key.finish()
            }
            Variant::SetWl => {
                let m = e.len();
                let outside: Vec<u32> = nodes
                    .clone()
                    .filter(|x| e.binary_search(x).is_err())
                    .collect();
                let mut up: Vec<u32> = if m < k {
                    outside
                        .iter()
                        .map(|&x| {
                            let mut larger = e.clone();
                            larger.insert(e.partition_point(|&v| v < x), x);
                            cur[index.sorted(&larger)]
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                let mut down: Vec<u32> = if m > 1 {
                    (0..m)
                        .map(|i| {
                            let smaller: Vec<u32> = e
                                .iter()
                                .enumerate()
                                .filter(|&(j, _)| j != i)
                                .map(|(_, &v)| v)
                                .collect();
                            cur[index.sorted(&smaller)]
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                let mut key = Key::new(Tag::SetUpdate);
                key.push(cur[ei]).multiset(&mut up).multiset(&mut down);
                if outside.is_empty() {
                    key.multiset(&mut []);
                } else {
                    let mut flat = Vec::with_capacity(m * outside.len());
                    for i in 0..m {
                        let mut inner: Vec<u32> = outside
                            .iter()
                            .map(|&x| cur[index.sorted(&substitute_set(e, i, x))])
                            .collect();
                        inner.sort_unstable();
                        flat.extend(inner);
                    }
                    key.multiset_of_tuples(&flat, outside.len());
                }
                key.finish()
            }
        })
        .collect()
}

fn one_wl_key(g: &ColoredGraph, v: u32, cur: &[u32]) -> Vec<u32> {
    let mut around: Vec<u32> = g
        .neighbors(v as usize)
        .iter()
        .map(|&u| cur[u as usize])
        .collect();
    let mut key = Key::new(Tag::NodeUpdate);
    key.push(cur[v as usize]).multiset(&mut around);
    key.finish()
}

/// A joint reference run over several graphs.
#[derive(Debug, Clone)]
pub struct ReferenceTrace {
    pub variant: Variant,
    pub k: usize,
    /// Element list of every graph, aligned with the codes.
    pub elements: Vec<Vec<Vec<u32>>>,
    /// `history[t][g]`: codes of graph `g` after iteration `t`
    /// (0 is the initialization).
    pub history: Vec<Vec<Vec<u32>>>,
    /// First iteration whose partition the next one leaves unchanged.
    pub iterations_to_stable: Option<usize>,
}

impl ReferenceTrace {
    /// Codes at iteration `t`, or the last recorded (stable) codes if the
    /// run stopped earlier.
    pub fn at(&self, t: usize) -> &[Vec<u32>] {
        &self.history[t.min(self.history.len() - 1)]
    }

    /// Sorted `(code, count)` histogram of graph `g` at iteration `t`.
    pub fn histogram(&self, t: usize, g: usize) -> Vec<(u32, usize)> {
        let mut codes = self.at(t)[g].clone();
        codes.sort_unstable();
        let mut out: Vec<(u32, usize)> = Vec::new();
        for c in codes {
            match out.last_mut() {
                Some((last, n)) if *last == c => *n += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }
}

/// Runs `variant` jointly on `graphs` until the pooled partition is stable
/// or `max_iters` iterations have run (default: total elements + 1).
pub fn run_reference(
    graphs: &[&ColoredGraph],
    variant: Variant,
    k: usize,
    max_iters: Option<usize>,
) -> Result<ReferenceTrace> {
    for g in graphs {
        check_scale(variant, g.node_count(), k)?;
    }
    let elements: Vec<Vec<Vec<u32>>> = graphs
        .iter()
        .map(|g| elements(variant, g.node_count(), k))
        .collect();
    let indexes: Vec<Index<'_>> = graphs
        .iter()
        .zip(&elements)
        .map(|(g, e)| Index::new(variant, g.node_count(), k, e))
        .collect();
    let cap = max_iters.unwrap_or_else(|| elements.iter().map(Vec::len).sum::<usize>() + 1);

    let mut table = ColorTable::new();
    let mut current = Vec::with_capacity(graphs.len());
    for (g, e) in graphs.iter().zip(&elements) {
        let keys = init_keys(variant, g, k, e)?;
        current.push(table.codes_for(&keys));
    }
    let pooled = |codes: &Vec<Vec<u32>>| class_count(codes.iter().flatten().copied());
    let mut classes = pooled(&current);
    let mut history = vec![current];
    let mut stable = None;
    while history.len() <= cap {
        let cur = history.last().unwrap();
        let mut next = Vec::with_capacity(graphs.len());
        for ((g, index), codes) in graphs.iter().zip(&indexes).zip(cur) {
            let keys = update_keys(variant, g, k, index, codes);
            next.push(table.codes_for(&keys));
        }
        let after = pooled(&next);
        if after == classes {
            stable = Some(history.len() - 1);
            break;
        }
        classes = after;
        history.push(next);
    }
    drop(indexes);
    Ok(ReferenceTrace {
        variant,
        k,
        elements,
        history,
        iterations_to_stable: stable,
    })
}

fn single(g: &ColoredGraph, variant: Variant, k: usize) -> Result<ReferenceTrace> {
    run_reference(&[g], variant, k, None)
}

pub fn one_wl(g: &ColoredGraph) -> ReferenceTrace {
    single(g, Variant::OneWl, 1).expect("color refinement has no guard")
}

pub fn k_wl(g: &ColoredGraph, k: usize) -> Result<ReferenceTrace> {
    single(g, Variant::KWl, k)
}

/// At `k = 1` this is plain color refinement.
pub fn k_fwl(g: &ColoredGraph, k: usize) -> Result<ReferenceTrace> {
    single(g, Variant::KFwl, k)
}

pub fn k_multiset_wl(g: &ColoredGraph, k: usize) -> Result<ReferenceTrace> {
    single(g, Variant::KMultisetWl, k)
}

pub fn k_set_fwl(g: &ColoredGraph, k: usize) -> Result<ReferenceTrace> {
    single(g, Variant::KSetFwl, k)
}

pub fn set_wl(g: &ColoredGraph, k: usize) -> Result<ReferenceTrace> {
    single(g, Variant::SetWl, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceVerdict {
    pub verdict: Outcome,
    pub iteration: Option<usize>,
    pub variant: Variant,
    pub k: usize,
    pub iterations_to_stable: Option<usize>,
}

impl ReferenceVerdict {
    pub fn distinguished(&self) -> bool {
        self.verdict == Outcome::Distinguished
    }
}

pub fn distinguish_reference(
    a: &ColoredGraph,
    b: &ColoredGraph,
    variant: Variant,
    k: usize,
) -> Result<ReferenceVerdict> {
    let trace = run_reference(&[a, b], variant, k, None)?;
    let steps = trace.history.len();
    let ha: Vec<_> = (0..steps).map(|t| trace.histogram(t, 0)).collect();
    let hb: Vec<_> = (0..steps).map(|t| trace.histogram(t, 1)).collect();
    let iteration = first_difference(&ha, &hb);
    Ok(ReferenceVerdict {
        verdict: if iteration.is_some() {
            Outcome::Distinguished
        } else {
            Outcome::Indistinguishable
        },
        iteration,
        variant,
        k,
        iterations_to_stable: trace.iterations_to_stable,
    })
}
