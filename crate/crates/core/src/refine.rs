//! Color refinement over the set supergraph.
//!
//! Initial colors come from exact certificates of the induced subgraph of
//! every single-component set; a multi-component set is colored by the
//! multiset of its components' colors instead of being certified whole.
//! Each iteration then runs one of two schedules:
//!
//! * **parallel**: every set first collects the colors of its supersets
//!   (the half step), then combines its own color, its half-step color and
//!   the colors and half-step colors of its subsets;
//! * **sequential**: a backward sweep from the top layer down computes the
//!   half step from the already-updated half steps of the supersets, and a
//!   forward sweep from layer 2 up computes the new color from the
//!   already-updated new colors of the subsets.
//!
//! Several graphs can be refined jointly against one [`ColorTable`], which
//! makes their codes comparable.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_certificate;
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::supergraph::{build_component_map, build_supergraph, ComponentMap, SetRef, SuperGraph};
use crate::table::{class_count, ColorTable, Key, Tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    Parallel,
    #[default]
    Sequential,
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schedule::Parallel => "parallel",
            Schedule::Sequential => "sequential",
        })
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parallel" => Ok(Schedule::Parallel),
            "sequential" => Ok(Schedule::Sequential),
            other => Err(Error::InvalidParams(format!("unknown schedule {other:?}"))),
        }
    }
}

/// Codes of every stored set, per layer (index `m - 1`), plus the
/// half-step codes of the last iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub codes: Vec<Vec<u32>>,
    pub half: Option<Vec<Vec<u32>>>,
}

impl Coloring {
    pub fn code(&self, r: SetRef) -> u32 {
        self.codes[r.m - 1][r.index]
    }

    /// All codes, layer by layer.
    pub fn flat(&self) -> Vec<u32> {
        self.codes.iter().flatten().copied().collect()
    }
}

/// A graph together with its supergraph and component map.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub graph: ColoredGraph,
    pub supergraph: SuperGraph,
    pub components: ComponentMap,
}

impl Prepared {
    pub fn new(graph: &ColoredGraph, k: usize, c: usize) -> Result<Prepared> {
        let supergraph = build_supergraph(graph, k, c)?;
        let components = build_component_map(&supergraph);
        Ok(Prepared {
            graph: graph.clone(),
            supergraph,
            components,
        })
    }
}

pub fn init_colors(
    g: &ColoredGraph,
    sg: &SuperGraph,
    cm: &ComponentMap,
    table: &mut ColorTable,
) -> Result<Coloring> {
    let mut codes: Vec<Vec<u32>> = Vec::with_capacity(sg.layers().len());
    for (li, layer) in sg.layers().iter().enumerate() {
        let keys = (0..layer.len())
            .into_par_iter()
            .map(|i| -> Result<Option<Vec<u32>>> {
                if layer.components(i) > 1 {
                    return Ok(None);
                }
                let cert = canonical_certificate(&g.induced_unchecked(layer.set(i)))?;
                let mut key = Key::new(Tag::Certificate);
                for &b in cert.as_bytes() {
                    key.push(b as u32);
                }
                Ok(Some(key.finish()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut layer_codes = Vec::with_capacity(layer.len());
        for (i, key) in keys.into_iter().enumerate() {
            let key = match key {
                Some(key) => key,
                None => {
                    let parts = cm
                        .parts(SetRef {
                            m: li + 1,
                            index: i,
                        })
                        .expect("every multi-component set is decomposed");
                    let mut part_codes: Vec<u32> =
                        parts.iter().map(|p| codes[p.m - 1][p.index]).collect();
                    let mut key = Key::new(Tag::Parts);
                    key.multiset(&mut part_codes);
                    key.finish()
                }
            };
            layer_codes.push(table.code(&key));
        }
        codes.push(layer_codes);
    }
    Ok(Coloring { codes, half: None })
}

fn gather(codes: &[u32], indices: &[u32]) -> Vec<u32> {
    indices.iter().map(|&j| codes[j as usize]).collect()
}

/// Builds one key per set of layer `li` in parallel.
fn layer_keys<F>(len: usize, build: F) -> Vec<Vec<u32>>
where
    F: Fn(usize) -> Vec<u32> + Sync + Send,
{
    (0..len).into_par_iter().map(build).collect()
}

pub fn refine_parallel(sg: &SuperGraph, coloring: &Coloring, table: &mut ColorTable) -> Coloring {
    let layers = sg.layers();
    let cur = &coloring.codes;
    let mut half = Vec::with_capacity(layers.len());
    for (li, layer) in layers.iter().enumerate() {
        let keys = layer_keys(layer.len(), |i| {
            let mut right = match cur.get(li + 1) {
                Some(up) => gather(up, sg.right_neighbors(li, i)),
                None => Vec::new(),
            };
            let mut key = Key::new(Tag::HalfParallel);
            key.multiset(&mut right);
            key.finish()
        });
        half.push(table.codes_for(&keys));
    }
    let mut next = Vec::with_capacity(layers.len());
    for (li, layer) in layers.iter().enumerate() {
        let half = &half;
        let keys = layer_keys(layer.len(), |i| {
            let (mut left, mut left_half) = match li.checked_sub(1) {
                Some(down) => {
                    let below = sg.left_neighbors(li, i);
                    (gather(&cur[down], below), gather(&half[down], below))
                }
                None => (Vec::new(), Vec::new()),
            };
            let mut key = Key::new(Tag::NewParallel);
            key.push(cur[li][i])
                .push(half[li][i])
                .multiset(&mut left)
                .multiset(&mut left_half);
            key.finish()
        });
        next.push(table.codes_for(&keys));
    }
    Coloring {
        codes: next,
        half: Some(half),
    }
}

pub fn refine_sequential(sg: &SuperGraph, coloring: &Coloring, table: &mut ColorTable) -> Coloring {
    let layers = sg.layers();
    let depth = layers.len();
    let cur = &coloring.codes;
    if depth == 0 {
        return coloring.clone();
    }
    let mut half: Vec<Vec<u32>> = vec![Vec::new(); depth];
    // The top stored layer has no supersets. Its half step still goes through
    // the same key with an empty multiset: how many layers are stored depends
    // on the graph, and a jointly refined graph may hold the same kind of set
    // one layer below its own top.
    for li in (0..depth).rev() {
        let above = half.get(li + 1);
        let keys = layer_keys(layers[li].len(), |i| {
            let mut right = match above {
                Some(above) => gather(above, sg.right_neighbors(li, i)),
                None => Vec::new(),
            };
            let mut key = Key::new(Tag::HalfSequential);
            key.push(cur[li][i]).multiset(&mut right);
            key.finish()
        });
        half[li] = table.codes_for(&keys);
    }
    let mut next: Vec<Vec<u32>> = vec![Vec::new(); depth];
    // Singletons have no subsets; their new color is the half step.
    next[0] = half[0].clone();
    for li in 1..depth {
        let below = &next[li - 1];
        let half = &half;
        let keys = layer_keys(layers[li].len(), |i| {
            let mut left = gather(below, sg.left_neighbors(li, i));
            let mut key = Key::new(Tag::NewSequential);
            key.push(half[li][i]).multiset(&mut left);
            key.finish()
        });
        next[li] = table.codes_for(&keys);
    }
    Coloring {
        codes: next,
        half: Some(half),
    }
}

/// Sorted `(code, count)` pairs of one layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerHistogram {
    pub m: usize,
    pub classes: usize,
    pub histogram: Vec<(u32, usize)>,
}

fn histogram(m: usize, codes: &[u32]) -> LayerHistogram {
    let mut sorted = codes.to_vec();
    sorted.sort_unstable();
    let mut histogram: Vec<(u32, usize)> = Vec::new();
    for c in sorted {
        match histogram.last_mut() {
            Some((last, count)) if *last == c => *count += 1,
            _ => histogram.push((c, 1)),
        }
    }
    LayerHistogram {
        m,
        classes: histogram.len(),
        histogram,
    }
}

/// Several graphs refined against one shared table, one iteration at a
/// time.
pub struct JointRefinement<'a> {
    inputs: Vec<&'a SuperGraph>,
    schedule: Schedule,
    table: ColorTable,
    colorings: Vec<Coloring>,
    iteration: usize,
}

impl<'a> JointRefinement<'a> {
    /// Initializes graph by graph, in input order.
    pub fn new(inputs: &[&'a Prepared], schedule: Schedule) -> Result<Self> {
        let mut table = ColorTable::new();
        let mut colorings = Vec::with_capacity(inputs.len());
        for p in inputs {
            colorings.push(init_colors(
                &p.graph,
                &p.supergraph,
                &p.components,
                &mut table,
            )?);
        }
        Ok(JointRefinement {
            inputs: inputs.iter().map(|p| &p.supergraph).collect(),
            schedule,
            table,
            colorings,
            iteration: 0,
        })
    }

    pub fn step(&mut self) {
        let colorings = self
            .inputs
            .iter()
            .zip(&self.colorings)
            .map(|(sg, coloring)| match self.schedule {
                Schedule::Parallel => refine_parallel(sg, coloring, &mut self.table),
                Schedule::Sequential => refine_sequential(sg, coloring, &mut self.table),
            })
            .collect();
        self.colorings = colorings;
        self.iteration += 1;
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn coloring(&self, graph: usize) -> &Coloring {
        &self.colorings[graph]
    }

    pub fn table(&self) -> &ColorTable {
        &self.table
    }

    /// Distinct codes per layer, pooled over all graphs.
    pub fn class_counts(&self) -> Vec<usize> {
        let depth = self
            .colorings
            .iter()
            .map(|c| c.codes.len())
            .max()
            .unwrap_or(0);
        (0..depth)
            .map(|li| {
                class_count(
                    self.colorings
                        .iter()
                        .filter_map(|c| c.codes.get(li))
                        .flatten()
                        .copied(),
                )
            })
            .collect()
    }

    pub fn histograms(&self, graph: usize) -> Vec<LayerHistogram> {
        self.colorings[graph]
            .codes
            .iter()
            .enumerate()
            .map(|(li, codes)| histogram(li + 1, codes))
            .collect()
    }
}

/// Sorted `((m, components, code), multiplicity)` histogram of final
/// colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint(pub Vec<((usize, usize, u32), usize)>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTrace {
    pub k: usize,
    pub c: usize,
    pub schedule: Schedule,
    /// First iteration whose partition a further iteration leaves
    /// unchanged; `None` if the iteration cap was hit first.
    pub iterations_to_stable: Option<usize>,
    /// Per-iteration, per-layer histograms; entry 0 is the initialization.
    pub history: Vec<Vec<LayerHistogram>>,
    pub final_coloring: Coloring,
    component_counts: Vec<Vec<u8>>,
}

impl RefinementTrace {
    pub fn component_counts(&self) -> &[Vec<u8>] {
        &self.component_counts
    }
}

pub fn graph_fingerprint(trace: &RefinementTrace) -> Fingerprint {
    let mut counts: Vec<((usize, usize, u32), usize)> = Vec::new();
    for (li, codes) in trace.final_coloring.codes.iter().enumerate() {
        let mut keys: Vec<(usize, usize, u32)> = codes
            .iter()
            .zip(&trace.component_counts[li])
            .map(|(&code, &comps)| (li + 1, comps as usize, code))
            .collect();
        keys.sort_unstable();
        for key in keys {
            match counts.last_mut() {
                Some((last, n)) if *last == key => *n += 1,
                _ => counts.push((key, 1)),
            }
        }
    }
    Fingerprint(counts)
}

/// Outcome of a joint run over several graphs.
#[derive(Debug, Clone)]
pub struct JointTrace {
    pub traces: Vec<RefinementTrace>,
    pub iterations_to_stable: Option<usize>,
    /// Pooled class counts per iteration.
    pub class_counts: Vec<Vec<usize>>,
}

/// Refines `inputs` jointly until the pooled partition stops changing or
/// `max_iters` iterations have run (default: total set count + 1).
pub fn run_joint(
    inputs: &[&Prepared],
    schedule: Schedule,
    max_iters: Option<usize>,
) -> Result<JointTrace> {
    let k = inputs.first().map_or(1, |p| p.supergraph.k());
    let c = inputs.first().map_or(1, |p| p.supergraph.c());
    let cap = max_iters.unwrap_or_else(|| {
        inputs
            .iter()
            .map(|p| p.supergraph.total_sets())
            .sum::<usize>()
            + 1
    });

    let mut run = JointRefinement::new(inputs, schedule)?;
    let mut history: Vec<Vec<Vec<LayerHistogram>>> = vec![Vec::new(); inputs.len()];
    let mut class_counts = Vec::new();
    let mut counts = run.class_counts();
    let mut stable = None;
    let last = loop {
        for (g, h) in history.iter_mut().enumerate() {
            h.push(run.histograms(g));
        }
        class_counts.push(counts.clone());
        if run.iteration() >= cap {
            break run.colorings;
        }
        let before = run.colorings.clone();
        run.step();
        let next = run.class_counts();
        if next == counts {
            stable = Some(run.iteration() - 1);
            break before;
        }
        counts = next;
    };

    let traces = inputs
        .iter()
        .zip(history)
        .zip(last)
        .map(|((p, history), final_coloring)| RefinementTrace {
            k,
            c,
            schedule,
            iterations_to_stable: stable,
            history,
            final_coloring,
            component_counts: p
                .supergraph
                .layers()
                .iter()
                .map(|l| l.component_counts().to_vec())
                .collect(),
        })
        .collect();
    Ok(JointTrace {
        traces,
        iterations_to_stable: stable,
        class_counts,
    })
}

pub fn run_to_stable(
    g: &ColoredGraph,
    k: usize,
    c: usize,
    schedule: Schedule,
    max_iters: Option<usize>,
) -> Result<RefinementTrace> {
    let prepared = Prepared::new(g, k, c)?;
    let mut joint = run_joint(&[&prepared], schedule, max_iters)?;
    Ok(joint.traces.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Distinguished,
    Indistinguishable,
}

/// Final-iteration layer summary of a verdict: pooled class count and
/// the histograms of both graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictLayer {
    pub m: usize,
    pub classes: usize,
    pub histogram: Vec<(u32, usize)>,
    pub histogram_b: Vec<(u32, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: Outcome,
    /// First iteration at which the histograms differ.
    pub iteration: Option<usize>,
    pub k: usize,
    pub c: usize,
    pub schedule: Schedule,
    pub layers: Vec<VerdictLayer>,
    pub iterations_to_stable: Option<usize>,
}

impl Verdict {
    pub fn distinguished(&self) -> bool {
        self.verdict == Outcome::Distinguished
    }
}

/// First iteration at which two histories disagree.
pub(crate) fn first_difference<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    let shared = a.len().min(b.len());
    (0..shared)
        .find(|&t| a[t] != b[t])
        .or_else(|| (a.len() != b.len()).then_some(shared))
}

pub fn distinguish(
    a: &ColoredGraph,
    b: &ColoredGraph,
    k: usize,
    c: usize,
    schedule: Schedule,
) -> Result<Verdict> {
    let pa = Prepared::new(a, k, c)?;
    let pb = Prepared::new(b, k, c)?;
    Ok(distinguish_prepared(&pa, &pb, schedule)?.0)
}

/// Joint run over two prepared graphs; also returns the trace.
pub fn distinguish_prepared(
    a: &Prepared,
    b: &Prepared,
    schedule: Schedule,
) -> Result<(Verdict, JointTrace)> {
    let trace = run_joint(&[a, b], schedule, None)?;
    let (ta, tb) = (&trace.traces[0], &trace.traces[1]);
    let iteration = first_difference(&ta.history, &tb.history);
    let last = trace.class_counts.last().cloned().unwrap_or_default();
    let fa = ta.history.last().cloned().unwrap_or_default();
    let fb = tb.history.last().cloned().unwrap_or_default();
    let depth = fa.len().max(fb.len());
    let layers = (0..depth)
        .map(|li| VerdictLayer {
            m: li + 1,
            classes: last.get(li).copied().unwrap_or(0),
            histogram: fa.get(li).map(|h| h.histogram.clone()).unwrap_or_default(),
            histogram_b: fb.get(li).map(|h| h.histogram.clone()).unwrap_or_default(),
        })
        .collect();
    let verdict = Verdict {
        verdict: if iteration.is_some() {
            Outcome::Distinguished
        } else {
            Outcome::Indistinguishable
        },
        iteration,
        k: a.supergraph.k(),
        c: a.supergraph.c(),
        schedule,
        layers,
        iterations_to_stable: trace.iterations_to_stable,
    };
    Ok((verdict, trace))
}
