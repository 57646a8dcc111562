//! The (k,c)(≤)-SetWL graph isomorphism hierarchy: supergraphs over small
//! node sets with bounded component counts, color refinement on them, and
//! the reference algorithms and oracles used to check it.

pub mod canon;
pub mod cfi;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod reference;
pub mod refine;
pub mod supergraph;
pub mod table;

pub use canon::{canonical_certificate, Certificate, MAX_CERTIFIED_NODES};
pub use cfi::{cfi_expand, cfi_flip_map, cfi_pair, cfi_subgraph, CfiGraph, CfiVertex};
pub use error::{Error, Result};
pub use graph::{
    load_graph, load_graph_with, ColoredGraph, ComponentPartition, GraphFormat, LabelInterner,
    NodeSet,
};
pub use oracle::{brute_force_isomorphic, count_pattern, enumerate_kc_sets, Pattern};
pub use reference::{
    distinguish_reference, run_reference, ReferenceTrace, ReferenceVerdict, Variant,
};
pub use refine::{
    distinguish, distinguish_prepared, graph_fingerprint, init_colors, refine_parallel,
    refine_sequential, run_joint, run_to_stable, Coloring, Fingerprint, JointRefinement,
    JointTrace, LayerHistogram, Outcome, Prepared, RefinementTrace, Schedule, Verdict,
};
pub use supergraph::{
    binomial, binomial_sum_bound_holds, build_component_map, build_supergraph, dense_counts,
    supergraph_stats, ComponentMap, DenseCounts, SetRef, SuperGraph, SupergraphExport,
    SupergraphStats,
};
pub use table::ColorTable;
