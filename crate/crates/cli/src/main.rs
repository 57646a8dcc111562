//! `setwl`: build set supergraphs, refine them, compare graphs, generate
//! CFI pairs, run the brute-force oracles and report scaling numbers.
//! Every command prints one JSON document on stdout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use setwl_core::graph::{load_graph_with, LabelInterner};
use setwl_core::{
    brute_force_isomorphic, build_component_map, build_supergraph, canonical_certificate, cfi_pair,
    count_pattern, dense_counts, distinguish_prepared, distinguish_reference, enumerate_kc_sets,
    graph_fingerprint, init_colors, run_joint, supergraph_stats, CfiGraph, ColorTable,
    ColoredGraph, GraphFormat, Pattern, Prepared, Schedule, SupergraphExport, Variant,
};

#[derive(Parser)]
#[command(
    name = "setwl",
    version,
    about = "(k,c)(<=)-SetWL graph isomorphism toolkit"
)]
struct Cli {
    /// Worker threads for per-set work.
    #[arg(long, global = true, env = "SETWL_THREADS")]
    threads: Option<usize>,
    /// Single thread and no wall-clock fields: identical runs print identical bytes.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the supergraph of (k,c)-sets and export it.
    Build {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        kc: Kc,
        /// Print only per-layer counts.
        #[arg(long)]
        stats: bool,
        /// Leave initial colors out of the export.
        #[arg(long)]
        no_init_colors: bool,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Refine one graph to a stable coloring.
    Refine {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        kc: Kc,
        #[arg(long, default_value = "sequential")]
        schedule: Schedule,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Refine two graphs jointly and report whether they are told apart.
    Distinguish {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[command(flatten)]
        kc: Kc,
        #[arg(long, default_value = "sequential")]
        schedule: Schedule,
        /// Use a reference algorithm instead (k from --k; --c ignored).
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Write the CFI pair over K_k as two edge lists plus a JSON sidecar.
    Cfi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_prefix: PathBuf,
        /// Also report the smallest c for which (k,c)-SetWL separates the pair.
        #[arg(long)]
        sweep_c: bool,
        #[arg(long, default_value = "sequential")]
        schedule: Schedule,
    },
    /// Dense supergraph sizes next to k-WL, plus a timed run on a random graph.
    Bench {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        /// Component bound for the timed run; defaults to min(2, k).
        #[arg(long)]
        c: Option<usize>,
        /// Edge probability of the random graph.
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "sequential")]
        schedule: Schedule,
        /// Only report the closed-form counts.
        #[arg(long)]
        counts_only: bool,
    },
    /// Brute-force ground truth.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Canonical certificate of a whole graph (at most 12 nodes).
    Canon {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Exact isomorphism test.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Count subgraph copies of a small pattern.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        pattern: Pattern,
    },
    /// All (k,c)-sets by direct enumeration.
    Sets {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        kc: Kc,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to graph6 for .g6 files and edge-list otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Clone, Copy)]
struct Kc {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    c: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    EdgeList,
    Graph6,
}

type Failure = Box<dyn std::error::Error>;

fn format_for(path: &Path, explicit: Option<Format>) -> GraphFormat {
    match explicit {
        Some(Format::EdgeList) => GraphFormat::EdgeList,
        Some(Format::Graph6) => GraphFormat::Graph6,
        None if path.extension().is_some_and(|e| e == "g6") => GraphFormat::Graph6,
        None => GraphFormat::EdgeList,
    }
}

fn read_graph(
    path: &Path,
    format: Option<Format>,
    labels: &mut LabelInterner,
) -> Result<ColoredGraph, Failure> {
    let data = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load_graph_with(&data, format_for(path, format), labels)
        .map_err(|e| format!("{}: {e}", path.display()).into())
}

fn emit(value: &Value, output: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string(value)?;
    match output {
        Some(path) => fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn build(
    input: &Input,
    kc: Kc,
    stats: bool,
    no_init: bool,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let g = read_graph(&input.input, input.format, &mut LabelInterner::default())?;
    let sg = build_supergraph(&g, kc.k, kc.c)?;
    if stats {
        let s = supergraph_stats(&sg);
        return emit(
            &json!({
                "n": g.node_count(),
                "k": kc.k,
                "c": kc.c,
                "set_counts": s.set_counts,
                "edge_counts": s.edge_counts,
                "total_sets": s.total_sets,
                "total_edges": s.total_edges,
            }),
            output,
        );
    }
    let map = build_component_map(&sg);
    let colors = if no_init {
        None
    } else {
        Some(init_colors(&g, &sg, &map, &mut ColorTable::new())?.codes)
    };
    emit(
        &serde_json::to_value(SupergraphExport::new(&sg, &map, colors))?,
        output,
    )
}

fn refine(
    input: &Input,
    kc: Kc,
    schedule: Schedule,
    max_iters: Option<usize>,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let g = read_graph(&input.input, input.format, &mut LabelInterner::default())?;
    let prepared = Prepared::new(&g, kc.k, kc.c)?;
    let joint = run_joint(&[&prepared], schedule, max_iters)?;
    let trace = &joint.traces[0];
    let fingerprint: Vec<Value> = graph_fingerprint(trace)
        .0
        .iter()
        .map(|&((m, comps, code), count)| json!([m, comps, code, count]))
        .collect();
    emit(
        &json!({
            "k": kc.k,
            "c": kc.c,
            "schedule": schedule,
            "iterations_to_stable": trace.iterations_to_stable,
            "class_counts_per_iteration": joint.class_counts,
            "layers": trace.history.last(),
            "fingerprint": fingerprint,
        }),
        output,
    )
}

fn distinguish(
    a: &Path,
    b: &Path,
    format: Option<Format>,
    kc: Kc,
    schedule: Schedule,
    variant: Option<Variant>,
) -> Result<(), Failure> {
    let mut labels = LabelInterner::default();
    let ga = read_graph(a, format, &mut labels)?;
    let gb = read_graph(b, format, &mut labels)?;
    if let Some(variant) = variant {
        let verdict = distinguish_reference(&ga, &gb, variant, kc.k)?;
        return emit(&serde_json::to_value(verdict)?, None);
    }
    let pa = Prepared::new(&ga, kc.k, kc.c)?;
    let pb = Prepared::new(&gb, kc.k, kc.c)?;
    let (verdict, _) = distinguish_prepared(&pa, &pb, schedule)?;
    emit(&serde_json::to_value(verdict)?, None)
}

fn sidecar_entry(file: &Path, t: &[usize], g: &CfiGraph) -> Value {
    json!({
        "file": file.file_name().map(|f| f.to_string_lossy()),
        "t": t,
        "vertices": g.graph.node_count(),
        "edges": g.graph.edge_count(),
        "labels": g.labels,
        "source": g.source,
    })
}

fn cfi(k: usize, prefix: &Path, sweep: bool, schedule: Schedule) -> Result<(), Failure> {
    let (a, b) = cfi_pair(k)?;
    let with_suffix = |suffix: &str| {
        let mut name = prefix.as_os_str().to_owned();
        name.push(suffix);
        PathBuf::from(name)
    };
    let (path_a, path_b, path_json) = (
        with_suffix("_a.el"),
        with_suffix("_b.el"),
        with_suffix(".json"),
    );
    fs::write(&path_a, a.graph.to_edge_list(true))?;
    fs::write(&path_b, b.graph.to_edge_list(true))?;
    let sidecar = json!({
        "k": k,
        "graphs": [sidecar_entry(&path_a, &[], &a), sidecar_entry(&path_b, &[0], &b)],
    });
    fs::write(&path_json, serde_json::to_string_pretty(&sidecar)? + "\n")?;

    let mut report = json!({
        "k": k,
        "vertices": a.graph.node_count(),
        "edges": a.graph.edge_count(),
        "files": [path_a, path_b, path_json],
    });
    if sweep {
        let mut verdicts = Vec::new();
        let mut smallest = None;
        for c in 1..=k {
            let pa = Prepared::new(&a.graph, k, c)?;
            let pb = Prepared::new(&b.graph, k, c)?;
            let (v, _) = distinguish_prepared(&pa, &pb, schedule)?;
            verdicts.push(json!({"c": c, "verdict": v.verdict, "iteration": v.iteration}));
            if v.distinguished() {
                smallest = Some(c);
                break;
            }
        }
        report["sweep"] = json!({"schedule": schedule, "smallest_c": smallest, "runs": verdicts});
    }
    emit(&report, None)
}

/// Peak resident set size from /proc, where available.
fn peak_rss_kib() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

struct BenchArgs {
    n: u64,
    k: u64,
    c: Option<usize>,
    p: f64,
    seed: u64,
    schedule: Schedule,
    counts_only: bool,
}

fn bench(args: BenchArgs, deterministic: bool) -> Result<(), Failure> {
    let d = dense_counts(args.n, args.k)?;
    let mut report = json!({
        "n": args.n,
        "k": args.k,
        "supernodes": d.supernodes,
        "bipartite_edges": d.bipartite_edges,
        "kwl_nodes": d.kwl_nodes,
        "kwl_edges": d.kwl_edges,
        "node_ratio": d.node_ratio(),
        "edge_ratio": d.edge_ratio(),
        "node_ratio_rounded": d.node_ratio().round(),
        "edge_ratio_rounded": d.edge_ratio().round(),
        "bound_holds": d.bound_holds,
    });
    if args.counts_only {
        return emit(&report, None);
    }
    if !(0.0..=1.0).contains(&args.p) {
        return Err(format!("--p must lie in [0, 1], got {}", args.p).into());
    }
    let (n, k) = (args.n as usize, args.k as usize);
    let c = args.c.unwrap_or(k.min(2));
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(args.p) {
                edges.push((u, v));
            }
        }
    }
    let g = ColoredGraph::new(n, edges)?;

    let start = Instant::now();
    let prepared = Prepared::new(&g, k, c)?;
    let build_time = start.elapsed();
    let start = Instant::now();
    let joint = run_joint(&[&prepared], args.schedule, None)?;
    let refine_time = start.elapsed();

    let stats = supergraph_stats(&prepared.supergraph);
    let mut run = json!({
        "c": c,
        "p": args.p,
        "seed": args.seed,
        "graph_edges": g.edge_count(),
        "schedule": args.schedule,
        "sets": stats.total_sets,
        "bipartite_edges": stats.total_edges,
        "set_counts": stats.set_counts,
        "iterations_to_stable": joint.iterations_to_stable,
    });
    if !deterministic {
        run["build_ms"] = json!(build_time.as_secs_f64() * 1e3);
        run["refine_ms"] = json!(refine_time.as_secs_f64() * 1e3);
        run["peak_rss_kib"] = json!(peak_rss_kib());
        run["memory_note"] = json!(
            "best effort: process peak RSS (VmHWM), includes everything the process allocated"
        );
    }
    report["run"] = run;
    emit(&report, None)
}

fn oracle(query: &OracleQuery) -> Result<(), Failure> {
    match query {
        OracleQuery::Iso { a, b, format } => {
            let mut labels = LabelInterner::default();
            let ga = read_graph(a, *format, &mut labels)?;
            let gb = read_graph(b, *format, &mut labels)?;
            emit(
                &json!({"isomorphic": brute_force_isomorphic(&ga, &gb)?}),
                None,
            )
        }
        OracleQuery::Count { input, pattern } => {
            let g = read_graph(&input.input, input.format, &mut LabelInterner::default())?;
            emit(
                &json!({"pattern": pattern, "count": count_pattern(&g, *pattern)?}),
                None,
            )
        }
        OracleQuery::Sets { input, kc } => {
            let g = read_graph(&input.input, input.format, &mut LabelInterner::default())?;
            let sets: Vec<Vec<u32>> = enumerate_kc_sets(&g, kc.k, kc.c)?
                .into_iter()
                .map(Vec::from)
                .collect();
            emit(
                &json!({"k": kc.k, "c": kc.c, "count": sets.len(), "sets": sets}),
                None,
            )
        }
    }
}

fn canon(input: &Input) -> Result<(), Failure> {
    let g = read_graph(&input.input, input.format, &mut LabelInterner::default())?;
    let cert = canonical_certificate(&g)?;
    emit(
        &json!({"n": g.node_count(), "certificate": cert.to_hex()}),
        None,
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = if cli.deterministic {
        Some(1)
    } else {
        cli.threads
    };
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()?;
    }
    match &cli.command {
        Command::Build {
            input,
            kc,
            stats,
            no_init_colors,
            output,
        } => build(input, *kc, *stats, *no_init_colors, output.as_deref()),
        Command::Refine {
            input,
            kc,
            schedule,
            max_iters,
            output,
        } => refine(input, *kc, *schedule, *max_iters, output.as_deref()),
        Command::Distinguish {
            a,
            b,
            format,
            kc,
            schedule,
            variant,
        } => distinguish(a, b, *format, *kc, *schedule, *variant),
        Command::Cfi {
            k,
            out_prefix,
            sweep_c,
            schedule,
        } => cfi(*k, out_prefix, *sweep_c, *schedule),
        Command::Bench {
            n,
            k,
            c,
            p,
            seed,
            schedule,
            counts_only,
        } => bench(
            BenchArgs {
                n: *n,
                k: *k,
                c: *c,
                p: *p,
                seed: *seed,
                schedule: *schedule,
                counts_only: *counts_only,
            },
            cli.deterministic,
        ),
        Command::Oracle { query } => oracle(query),
        Command::Canon { input } => canon(input),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": e.to_string()}));
            ExitCode::from(1)
        }
    }
}
