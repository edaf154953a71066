//! Query latency measurement over seeded random connected graphs.

use std::hint::black_box;
use std::time::Instant;

use rand::Rng;

use crate::dfsindex::{BuildMode, DfsIndex};
use crate::encindex::{EncIndex, DEFAULT_EPSILON};
use crate::error::Result;
use crate::gen;

/// Query kinds in the order they are reported.
pub const KINDS: [&str; 8] = ["1a", "1b", "2a", "2b", "2c", "2d", "3", "4"];

/// Calls of the linear-time full traversal are capped at this many.
const PREORDER_CALLS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub model: &'static str,
    pub size: usize,
    pub query: &'static str,
    pub median_ns: f64,
    pub bits: usize,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub density: f64,
    pub queries: usize,
    pub seed: u64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let k = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[k]
    } else {
        (xs[k - 1] + xs[k]) / 2.0
    }
}

/// Median of per-call wall times for `f` over the argument list.
fn time_calls<A: Copy, R>(args: &[A], mut f: impl FnMut(A) -> R) -> f64 {
    for &a in args.iter().take(16) {
        black_box(f(a));
    }
    let samples = args
        .iter()
        .map(|&a| {
            let t = Instant::now();
            black_box(f(black_box(a)));
            t.elapsed().as_nanos() as f64
        })
        .collect();
    median(samples)
}

/// Random vertex and pair arguments shared by both models.
struct Args {
    single: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl Args {
    fn new(n: usize, count: usize, seed: u64) -> Args {
        let mut rng = gen::rng(seed);
        Args {
            single: (0..count).map(|_| rng.gen_range(1..=n)).collect(),
            pairs: (0..count).map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n))).collect(),
        }
    }
}

/// The graph used for `size`: connected, undirected, `density * size` edges.
pub fn bench_graph(size: usize, density: f64, seed: u64) -> crate::graph::AdjacencyGraph {
    let m = ((density * size as f64).round() as usize).max(size.saturating_sub(1));
    gen::connected_undirected(size, m, seed ^ size as u64)
}

pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &size in &cfg.sizes {
        let g = bench_graph(size, cfg.density, cfg.seed);
        let args = Args::new(size, cfg.queries, cfg.seed.wrapping_add(size as u64));
        let pre = &args.single[..args.single.len().min(PREORDER_CALLS)];

        let idx = DfsIndex::build(&g, 1, BuildMode::Auto)?;
        let v = idx.bind(&g)?;
        let bits = idx.total_bits();
        let times = [
            time_calls(&args.pairs, |(a, b)| v.first_visited(a, b)),
            time_calls(&args.pairs, |(a, b)| v.is_ancestor(a, b)),
            time_calls(&args.single, |a| v.parent(a)),
            time_calls(&args.single, |a| v.num_children(a)),
            time_calls(&args.single, |a| v.children(a)),
            time_calls(&args.single, |a| v.dfi(a)),
            time_calls(pre, |_| v.preorder()),
            time_calls(&args.single, |a| v.vertex_at(a)),
        ];
        rows.extend(KINDS.iter().zip(times).map(|(&q, t)| BenchRow { model: "indexing", size, query: q, median_ns: t, bits }));

        let enc = EncIndex::build(&g, 1, DEFAULT_EPSILON)?;
        let bits = enc.total_bits();
        let times = [
            time_calls(&args.pairs, |(a, b)| enc.first_visited(a, b)),
            time_calls(&args.pairs, |(a, b)| enc.is_ancestor(a, b)),
            time_calls(&args.single, |a| enc.parent(a)),
            time_calls(&args.single, |a| enc.num_children(a)),
            time_calls(&args.single, |a| enc.children(a)),
            time_calls(&args.single, |a| enc.dfi(a)),
            time_calls(pre, |_| enc.preorder()),
            time_calls(&args.single, |a| enc.vertex_at(a)),
        ];
        rows.extend(KINDS.iter().zip(times).map(|(&q, t)| BenchRow { model: "encoding", size, query: q, median_ns: t, bits }));
    }
    Ok(rows)
}

/// Tab-separated table with a header line.
pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::from("model\tsize\tquery\tmedian_ns\tbits\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\t{:.1}\t{}\n", r.model, r.size, r.query, r.median_ns, r.bits));
    }
    out
}
