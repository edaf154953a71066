//! Seeded random graphs and trees for tests and benchmarks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::AdjacencyGraph;
use crate::tree::OrderedTree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_edges(n: usize, directed: bool) -> usize {
    let pairs = n * n.saturating_sub(1);
    if directed { pairs } else { pairs / 2 }
}

/// Connected undirected graph with `n` vertices and about `m` edges
/// (at least `n - 1`, at most all pairs). Adjacency lists are shuffled.
pub fn connected_undirected(n: usize, m: usize, seed: u64) -> AdjacencyGraph {
    let mut rng = rng(seed);
    let m = m.clamp(n.saturating_sub(1), max_edges(n, false));
    let mut label: Vec<usize> = (1..=n).collect();
    label.shuffle(&mut rng);
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.insert(ordered(label[i], label[j]));
    }
    fill(&mut edges, m, n, &mut rng, false);
    let mut lists = vec![Vec::new(); n];
    for &(u, v) in &edges {
        lists[u - 1].push(v);
        lists[v - 1].push(u);
    }
    for l in &mut lists {
        l.shuffle(&mut rng);
    }
    AdjacencyGraph::undirected(lists).expect("generated graph is simple")
}

/// Random digraph with about `m` arcs. With `rooted`, every vertex is
/// reachable from vertex 1.
pub fn directed(n: usize, m: usize, rooted: bool, seed: u64) -> AdjacencyGraph {
    let mut rng = rng(seed);
    let floor = if rooted { n.saturating_sub(1) } else { 0 };
    let m = m.clamp(floor, max_edges(n, true));
    let mut edges = BTreeSet::new();
    if rooted {
        let mut label: Vec<usize> = (2..=n).collect();
        label.shuffle(&mut rng);
        label.insert(0, 1);
        for i in 1..n {
            let j = rng.gen_range(0..i);
            edges.insert((label[j], label[i]));
        }
    }
    fill(&mut edges, m, n, &mut rng, true);
    let mut out = vec![Vec::new(); n];
    for &(u, v) in &edges {
        out[u - 1].push(v);
    }
    for l in &mut out {
        l.shuffle(&mut rng);
    }
    let mut inn = vec![Vec::new(); n];
    for (u, l) in out.iter().enumerate() {
        for &v in l {
            inn[v - 1].push(u + 1);
        }
    }
    for l in &mut inn {
        l.shuffle(&mut rng);
    }
    AdjacencyGraph::directed(out, inn).expect("generated graph is simple")
}

/// Undirected graph that may be disconnected: `m` random edges.
pub fn undirected(n: usize, m: usize, seed: u64) -> AdjacencyGraph {
    let mut rng = rng(seed);
    let mut edges = BTreeSet::new();
    fill(&mut edges, m.min(max_edges(n, false)), n, &mut rng, false);
    let mut lists = vec![Vec::new(); n];
    for &(u, v) in &edges {
        lists[u - 1].push(v);
        lists[v - 1].push(u);
    }
    for l in &mut lists {
        l.shuffle(&mut rng);
    }
    AdjacencyGraph::undirected(lists).expect("generated graph is simple")
}

/// Attaches random weights in `0..=max_w`, equal on both ends of an edge.
pub fn weighted(g: AdjacencyGraph, max_w: u64, seed: u64) -> AdjacencyGraph {
    let mut rng = rng(seed);
    let mut w = std::collections::HashMap::new();
    let weights = (1..=g.n())
        .map(|u| {
            g.neighbors(u)
                .iter()
                .map(|&v| {
                    let key = if g.is_directed() { (u, v as usize) } else { ordered(u, v as usize) };
                    *w.entry(key).or_insert_with(|| rng.gen_range(0..=max_w))
                })
                .collect()
        })
        .collect();
    g.with_weights(weights).expect("weights are symmetric")
}

/// Random rooted tree on `1..=n` with root 1. Shapes: 0 uniform attachment
/// (shallow), 1 near-path (deep), 2 bushy top.
pub fn tree(n: usize, shape: u8, seed: u64) -> OrderedTree {
    let mut rng = rng(seed);
    let parents: Vec<Option<usize>> = (0..=n)
        .map(|v| match v {
            0 | 1 => None,
            v => Some(match shape {
                0 => rng.gen_range(1..v),
                1 => v - 1 - rng.gen_range(0..(v - 1).min(3)),
                _ => rng.gen_range(1..=(v - 1).min(4)),
            }),
        })
        .collect();
    OrderedTree::from_parents(1, &parents)
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v { (u, v) } else { (v, u) }
}

fn fill(edges: &mut BTreeSet<(usize, usize)>, m: usize, n: usize, rng: &mut ChaCha8Rng, directed: bool) {
    while edges.len() < m {
        let (u, v) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
        if u != v {
            edges.insert(if directed { (u, v) } else { ordered(u, v) });
        }
    }
}
