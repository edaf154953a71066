//! Reference algorithms written independently of the library's index code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dfs_index::graph::AdjacencyGraph;
use dfs_index::tree::OrderedTree;
use dfs_index::treecover::TreeCover;

pub fn edge(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

pub struct Dsu(Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu((0..=n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// O(n^2) Dijkstra without a heap.
pub fn naive_dijkstra(g: &AdjacencyGraph, s: usize) -> Vec<Option<u64>> {
    let n = g.n();
    let mut dist = vec![None; n + 1];
    let mut done = vec![false; n + 1];
    dist[s] = Some(0u64);
    loop {
        let Some(v) = (1..=n).filter(|&v| !done[v] && dist[v].is_some()).min_by_key(|&v| dist[v]) else { break };
        done[v] = true;
        for (j, &u) in g.neighbors(v).iter().enumerate() {
            let nd = dist[v].unwrap() + g.weight(v, j + 1);
            if dist[u as usize].is_none_or(|d| nd < d) {
                dist[u as usize] = Some(nd);
            }
        }
    }
    dist
}

/// Tarjan's strongly connected components; returns a component id per vertex.
pub fn tarjan_scc(g: &AdjacencyGraph) -> Vec<usize> {
    struct St<'a> {
        g: &'a AdjacencyGraph,
        index: Vec<usize>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next: usize,
        comps: usize,
    }
    fn go(s: &mut St, v: usize) {
        s.next += 1;
        s.index[v] = s.next;
        s.low[v] = s.next;
        s.stack.push(v);
        s.on[v] = true;
        for &u in s.g.neighbors(v) {
            let u = u as usize;
            if s.index[u] == 0 {
                go(s, u);
                s.low[v] = s.low[v].min(s.low[u]);
            } else if s.on[u] {
                s.low[v] = s.low[v].min(s.index[u]);
            }
        }
        if s.low[v] == s.index[v] {
            s.comps += 1;
            loop {
                let w = s.stack.pop().unwrap();
                s.on[w] = false;
                s.comp[w] = s.comps;
                if w == v {
                    break;
                }
            }
        }
    }
    let n = g.n();
    let mut s = St {
        g,
        index: vec![0; n + 1],
        low: vec![0; n + 1],
        on: vec![false; n + 1],
        stack: Vec::new(),
        comp: vec![0; n + 1],
        next: 0,
        comps: 0,
    };
    for v in 1..=n {
        if s.index[v] == 0 {
            go(&mut s, v);
        }
    }
    s.comp
}

/// Hopcroft-Tarjan with an edge stack: cut vertices and each biconnected
/// component as a sorted edge list, the list of components sorted.
pub fn tarjan_bcc(g: &AdjacencyGraph) -> (Vec<bool>, Vec<Vec<(usize, usize)>>) {
    struct St<'a> {
        g: &'a AdjacencyGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        cut: Vec<bool>,
        estack: Vec<(usize, usize)>,
        comps: Vec<Vec<(usize, usize)>>,
        time: usize,
    }
    fn go(s: &mut St, v: usize, parent: usize) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        let mut kids = 0;
        for &u in s.g.neighbors(v) {
            let u = u as usize;
            if s.disc[u] == 0 {
                kids += 1;
                s.estack.push(edge(v, u));
                go(s, u, v);
                s.low[v] = s.low[v].min(s.low[u]);
                if s.low[u] >= s.disc[v] {
                    if parent != 0 {
                        s.cut[v] = true;
                    }
                    let mut c = Vec::new();
                    loop {
                        let e = s.estack.pop().unwrap();
                        c.push(e);
                        if e == edge(v, u) {
                            break;
                        }
                    }
                    c.sort_unstable();
                    s.comps.push(c);
                }
            } else if u != parent && s.disc[u] < s.disc[v] {
                s.estack.push(edge(v, u));
                s.low[v] = s.low[v].min(s.disc[u]);
            }
        }
        if parent == 0 && kids >= 2 {
            s.cut[v] = true;
        }
    }
    let n = g.n();
    let mut s = St {
        g,
        disc: vec![0; n + 1],
        low: vec![0; n + 1],
        cut: vec![false; n + 1],
        estack: Vec::new(),
        comps: Vec::new(),
        time: 0,
    };
    for v in 1..=n {
        if s.disc[v] == 0 {
            go(&mut s, v, 0);
        }
    }
    s.comps.sort();
    (s.cut, s.comps)
}

/// Bridges by low-link, normalized and sorted.
pub fn bridges(g: &AdjacencyGraph) -> Vec<(usize, usize)> {
    fn go(g: &AdjacencyGraph, v: usize, parent: usize, t: &mut usize, disc: &mut [usize], low: &mut [usize], out: &mut Vec<(usize, usize)>) {
        *t += 1;
        disc[v] = *t;
        low[v] = *t;
        for &u in g.neighbors(v) {
            let u = u as usize;
            if disc[u] == 0 {
                go(g, u, v, t, disc, low, out);
                low[v] = low[v].min(low[u]);
                if low[u] > disc[v] {
                    out.push(edge(u, v));
                }
            } else if u != parent {
                low[v] = low[v].min(disc[u]);
            }
        }
    }
    let n = g.n();
    let (mut disc, mut low, mut out, mut t) = (vec![0; n + 1], vec![0; n + 1], Vec::new(), 0);
    for v in 1..=n {
        if disc[v] == 0 {
            go(g, v, 0, &mut t, &mut disc, &mut low, &mut out);
        }
    }
    out.sort_unstable();
    out
}

/// 2-edge-connected component id per vertex: connectivity after deleting bridges.
pub fn two_edge_components(g: &AdjacencyGraph) -> Vec<usize> {
    let br: BTreeSet<(usize, usize)> = bridges(g).into_iter().collect();
    let mut d = Dsu::new(g.n());
    for (u, v) in g.edges() {
        if !br.contains(&edge(u, v)) {
            d.union(u, v);
        }
    }
    (0..=g.n()).map(|v| d.find(v)).collect()
}

/// Tree-cover invariants checked from scratch. `l` is the size parameter.
pub fn cover_violations(tree: &OrderedTree, cover: &TreeCover, l: usize) -> Vec<String> {
    let n = tree.node_count();
    let mut bad = Vec::new();
    let mts = cover.minitrees();
    if mts.len() * l > 8 * n {
        bad.push(format!("{} minitrees > 8n/L", mts.len()));
    }
    let mut owner = vec![usize::MAX; tree.len() + 1];
    let mut covered = vec![false; tree.len() + 1];
    for (i, m) in mts.iter().enumerate() {
        if m.nodes.len() > 2 * l {
            bad.push(format!("minitree {i} size {} > 2L", m.nodes.len()));
        }
        let set: BTreeSet<usize> = m.nodes.iter().map(|&x| x as usize).collect();
        covered[m.root] = true;
        let mut leaving = BTreeSet::new();
        for &x in &m.nodes {
            let x = x as usize;
            covered[x] = true;
            if x != m.root {
                if owner[x] != usize::MAX {
                    bad.push(format!("node {x} in minitrees {} and {i}", owner[x]));
                }
                owner[x] = i;
                match tree.parent(x) {
                    Some(p) if set.contains(&p) => {}
                    _ => bad.push(format!("minitree {i} not connected at {x}")),
                }
                if tree.children(x).iter().any(|&c| !set.contains(&(c as usize))) {
                    leaving.insert(x);
                }
            }
        }
        if leaving.len() > 1 {
            bad.push(format!("minitree {i} has {} non-root out-edges", leaving.len()));
        }
    }
    for &v in tree.order() {
        if !covered[v as usize] {
            bad.push(format!("node {v} uncovered"));
        }
    }
    bad
}
