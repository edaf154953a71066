//! Adjacency-array graphs and the plain-text graph format.
//!
//! Vertices are numbered `1..=n`. Adjacency order is kept exactly as given,
//! since the lexicographic DFS tree depends on it.

use std::fmt;

use crate::codec::{put_u64s, put_u8, put_usize, Decode, Encode, Reader};
use crate::error::{Error, Result};

/// Which adjacency arrays a search walks: forward searches go along
/// out-edges (children in `out_adj`, parents in `in_adj`); reverse searches
/// follow edges backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Forward,
    Reverse,
}

/// Graph in adjacency-array form. Directed graphs carry both out- and
/// in-neighbor arrays; undirected graphs list every edge at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyGraph {
    n: usize,
    m: usize,
    directed: bool,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    in_offsets: Vec<usize>,
    in_targets: Vec<u32>,
    out_weights: Option<Vec<u64>>,
    in_weights: Option<Vec<u64>>,
}

/// One broken invariant found by [`AdjacencyGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { vertex: usize, neighbor: usize },
    SelfLoop(usize),
    ParallelEdge { u: usize, v: usize },
    AsymmetricEdge { u: usize, v: usize },
    InOutMismatch { u: usize, v: usize },
    EdgeCountMismatch { declared: usize, found: usize },
    AsymmetricWeight { u: usize, v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { vertex, neighbor } => {
                write!(f, "vertex {vertex} lists out-of-range neighbor {neighbor}")
            }
            Violation::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            Violation::ParallelEdge { u, v } => write!(f, "parallel edge {u}-{v}"),
            Violation::AsymmetricEdge { u, v } => {
                write!(f, "asymmetric edge: {v} in list of {u} but not the reverse")
            }
            Violation::InOutMismatch { u, v } => {
                write!(f, "edge {u}->{v} not mirrored between out- and in-lists")
            }
            Violation::EdgeCountMismatch { declared, found } => {
                write!(f, "edge count mismatch: declared {declared}, found {found}")
            }
            Violation::AsymmetricWeight { u, v } => {
                write!(f, "edge {u}-{v} has different weights at its two ends")
            }
        }
    }
}

fn to_csr(lists: &[Vec<usize>]) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = Vec::with_capacity(lists.len() + 1);
    let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
    offsets.push(0);
    for l in lists {
        targets.extend(l.iter().map(|&v| v as u32));
        offsets.push(targets.len());
    }
    (offsets, targets)
}

impl AdjacencyGraph {
    /// Undirected graph from per-vertex neighbor lists (`lists[i]` belongs to
    /// vertex `i + 1`).
    pub fn undirected(lists: Vec<Vec<usize>>) -> Result<Self> {
        let n = lists.len();
        let deg_sum: usize = lists.iter().map(Vec::len).sum();
        let (out_offsets, out_targets) = to_csr(&lists);
        let g = AdjacencyGraph {
            n,
            m: deg_sum / 2,
            directed: false,
            out_offsets,
            out_targets,
            in_offsets: Vec::new(),
            in_targets: Vec::new(),
            out_weights: None,
            in_weights: None,
        };
        g.check()?;
        Ok(g)
    }

    /// Directed graph from explicit out- and in-neighbor lists.
    pub fn directed(out: Vec<Vec<usize>>, inn: Vec<Vec<usize>>) -> Result<Self> {
        if out.len() != inn.len() {
            return Err(Error::input("out- and in-lists disagree on vertex count"));
        }
        let n = out.len();
        let m = out.iter().map(Vec::len).sum();
        let (out_offsets, out_targets) = to_csr(&out);
        let (in_offsets, in_targets) = to_csr(&inn);
        let g = AdjacencyGraph {
            n,
            m,
            directed: true,
            out_offsets,
            out_targets,
            in_offsets,
            in_targets,
            out_weights: None,
            in_weights: None,
        };
        g.check()?;
        Ok(g)
    }

    /// Directed graph whose in-lists are derived from the out-lists, each
    /// in-list ordered by source vertex.
    pub fn directed_from_out(out: Vec<Vec<usize>>) -> Result<Self> {
        let n = out.len();
        let mut inn = vec![Vec::new(); n];
        for (u, l) in out.iter().enumerate() {
            for &v in l {
                if v == 0 || v > n {
                    return Err(Error::input(format!("vertex {} lists out-of-range neighbor {v}", u + 1)));
                }
                inn[v - 1].push(u + 1);
            }
        }
        Self::directed(out, inn)
    }

    /// Builds without checking invariants; pair with [`validate`](Self::validate).
    pub fn from_lists_unchecked(
        directed: bool,
        m: usize,
        out: Vec<Vec<usize>>,
        inn: Vec<Vec<usize>>,
    ) -> Self {
        let (out_offsets, out_targets) = to_csr(&out);
        let (in_offsets, in_targets) = if directed { to_csr(&inn) } else { (Vec::new(), Vec::new()) };
        AdjacencyGraph {
            n: out.len(),
            m,
            directed,
            out_offsets,
            out_targets,
            in_offsets,
            in_targets,
            out_weights: None,
            in_weights: None,
        }
    }

    /// Attaches non-negative weights, one per out-slot. Undirected graphs
    /// must give both ends of an edge the same weight; directed graphs get
    /// their in-slot weights mirrored from the out-slots.
    pub fn with_weights(mut self, weights: Vec<Vec<u64>>) -> Result<Self> {
        if weights.len() != self.n {
            return Err(Error::input("weight lists disagree on vertex count"));
        }
        let mut flat = Vec::with_capacity(self.out_targets.len());
        for v in 1..=self.n {
            if weights[v - 1].len() != self.degree(v) {
                return Err(Error::input(format!("vertex {v}: weight count differs from degree")));
            }
            flat.extend_from_slice(&weights[v - 1]);
        }
        self.out_weights = Some(flat);
        if self.directed {
            let mut inw = vec![0u64; self.in_targets.len()];
            for v in 1..=self.n {
                for (k, &u) in self.in_neighbors(v).iter().enumerate() {
                    let slot = self.find_position(u as usize, v).map_err(|_| {
                        Error::input(format!("edge {u}->{v} missing from out-list"))
                    })?;
                    inw[self.in_offsets[v - 1] + k] = self.weight(u as usize, slot);
                }
            }
            self.in_weights = Some(inw);
        }
        let bad: Vec<_> = self
            .validate()
            .into_iter()
            .filter(|v| matches!(v, Violation::AsymmetricWeight { .. }))
            .collect();
        if let Some(v) = bad.first() {
            return Err(Error::input(v));
        }
        Ok(self)
    }

    fn check(&self) -> Result<()> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::input(v)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.out_weights.is_some()
    }

    /// Out-neighbors of `v` (all neighbors when undirected).
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.out_targets[self.out_offsets[v - 1]..self.out_offsets[v]]
    }

    /// In-neighbors of `v` (all neighbors when undirected).
    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        if self.directed {
            &self.in_targets[self.in_offsets[v - 1]..self.in_offsets[v]]
        } else {
            self.neighbors(v)
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.out_offsets[v] - self.out_offsets[v - 1]
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).len()
    }

    /// Array whose entries are `v`'s tree children under `orient`.
    #[inline]
    pub fn child_side(&self, v: usize, orient: Orientation) -> &[u32] {
        match orient {
            Orientation::Forward => self.neighbors(v),
            Orientation::Reverse => self.in_neighbors(v),
        }
    }

    /// Array that holds `v`'s tree parent under `orient`.
    #[inline]
    pub fn parent_side(&self, v: usize, orient: Orientation) -> &[u32] {
        match orient {
            Orientation::Forward => self.in_neighbors(v),
            Orientation::Reverse => self.neighbors(v),
        }
    }

    /// The `j`-th (1-based) out-neighbor of `v`.
    pub fn neighbor(&self, v: usize, j: usize) -> Result<usize> {
        self.check_vertex(v)?;
        let adj = self.neighbors(v);
        if j == 0 || j > adj.len() {
            return Err(Error::range("adjacency slot", j, 1, adj.len()));
        }
        Ok(adj[j - 1] as usize)
    }

    /// The `j`-th (1-based) in-neighbor of `v`.
    pub fn in_neighbor(&self, v: usize, j: usize) -> Result<usize> {
        self.check_vertex(v)?;
        let adj = self.in_neighbors(v);
        if j == 0 || j > adj.len() {
            return Err(Error::range("adjacency slot", j, 1, adj.len()));
        }
        Ok(adj[j - 1] as usize)
    }

    /// 1-based slot of `u` in `v`'s out-list, by linear scan.
    pub fn find_position(&self, v: usize, u: usize) -> Result<usize> {
        self.check_vertex(v)?;
        scan(self.neighbors(v), u).ok_or_else(|| Error::NotFound(format!("{u} in adjacency of {v}")))
    }

    /// 1-based slot of `u` in `v`'s in-list, by linear scan.
    pub fn find_in_position(&self, v: usize, u: usize) -> Result<usize> {
        self.check_vertex(v)?;
        scan(self.in_neighbors(v), u)
            .ok_or_else(|| Error::NotFound(format!("{u} in in-adjacency of {v}")))
    }

    /// Weight of `v`'s `j`-th out-slot (1 when unweighted).
    #[inline]
    pub fn weight(&self, v: usize, j: usize) -> u64 {
        match &self.out_weights {
            Some(w) => w[self.out_offsets[v - 1] + j - 1],
            None => 1,
        }
    }

    /// Weight of `v`'s `j`-th in-slot (1 when unweighted).
    #[inline]
    pub fn in_weight(&self, v: usize, j: usize) -> u64 {
        match (&self.in_weights, self.directed) {
            (Some(w), true) => w[self.in_offsets[v - 1] + j - 1],
            (_, false) => self.weight(v, j),
            (None, true) => 1,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && scan(self.neighbors(u), v).is_some()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::range("vertex", v, 1, self.n));
        }
        Ok(())
    }

    /// Copy with every edge reversed.
    pub fn reversed(&self) -> AdjacencyGraph {
        if !self.directed {
            return self.clone();
        }
        AdjacencyGraph {
            n: self.n,
            m: self.m,
            directed: true,
            out_offsets: self.in_offsets.clone(),
            out_targets: self.in_targets.clone(),
            in_offsets: self.out_offsets.clone(),
            in_targets: self.out_targets.clone(),
            out_weights: self.in_weights.clone(),
            in_weights: self.out_weights.clone(),
        }
    }

    /// Every edge once: `(u, v)` with `u < v` for undirected graphs, each arc
    /// for directed ones.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 1..=self.n {
            for &v in self.neighbors(u) {
                let v = v as usize;
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Checks every structural invariant and lists the violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n;
        let mut seen = vec![0usize; n + 1];
        let check_list = |owner: usize, list: &[u32], seen: &mut [usize], out: &mut Vec<Violation>| {
            for &x in list {
                let x = x as usize;
                if x == 0 || x > n {
                    out.push(Violation::VertexOutOfRange { vertex: owner, neighbor: x });
                } else if x == owner {
                    out.push(Violation::SelfLoop(owner));
                } else if seen[x] == owner {
                    out.push(Violation::ParallelEdge { u: owner, v: x });
                } else {
                    seen[x] = owner;
                }
            }
        };
        for v in 1..=n {
            check_list(v, self.neighbors(v), &mut seen, &mut out);
        }
        if self.directed {
            seen.iter_mut().for_each(|s| *s = 0);
            for v in 1..=n {
                check_list(v, self.in_neighbors(v), &mut seen, &mut out);
            }
        }
        if !out.is_empty() {
            return out;
        }
        if self.directed {
            let outs = self.out_targets.len();
            let ins = self.in_targets.len();
            if outs != self.m || ins != self.m {
                out.push(Violation::EdgeCountMismatch { declared: self.m, found: outs.max(ins) });
            }
            for u in 1..=n {
                for &v in self.neighbors(u) {
                    if scan(self.in_neighbors(v as usize), u).is_none() {
                        out.push(Violation::InOutMismatch { u, v: v as usize });
                    }
                }
                for &w in self.in_neighbors(u) {
                    if scan(self.neighbors(w as usize), u).is_none() {
                        out.push(Violation::InOutMismatch { u: w as usize, v: u });
                    }
                }
            }
        } else {
            for u in 1..=n {
                for (j, &v) in self.neighbors(u).iter().enumerate() {
                    match scan(self.neighbors(v as usize), u) {
                        None => out.push(Violation::AsymmetricEdge { u, v: v as usize }),
                        Some(k) => {
                            if u < v as usize && self.weight(u, j + 1) != self.weight(v as usize, k) {
                                out.push(Violation::AsymmetricWeight { u, v: v as usize });
                            }
                        }
                    }
                }
            }
            if out.is_empty() && self.out_targets.len() != 2 * self.m {
                out.push(Violation::EdgeCountMismatch {
                    declared: self.m,
                    found: self.out_targets.len() / 2,
                });
            }
        }
        out
    }

    /// Parses the text format:
    ///
    /// ```text
    /// n m directed|undirected [weighted]
    /// <n lines of (out-)neighbors, each optionally suffixed :w>
    /// --                       (directed only)
    /// <n lines of in-neighbors> (directed only)
    /// ```
    ///
    /// `#` starts a comment. A vertex without neighbors is an empty line.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
        let strip = |l: &'_ str| l.split('#').next().unwrap_or("").to_string();
        let Some(hpos) = raw.iter().position(|(_, l)| !strip(l).trim().is_empty()) else {
            return Err(Error::Parse { line: 1, msg: "missing header".into() });
        };
        let hline = raw[hpos].0;
        let header = raw[hpos].1.split('#').next().unwrap_or("");
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(perr(hline, "header must be `n m directed|undirected [weighted]`".into()));
        }
        let n: usize = fields[0].parse().map_err(|_| perr(hline, format!("bad vertex count `{}`", fields[0])))?;
        let m: usize = fields[1].parse().map_err(|_| perr(hline, format!("bad edge count `{}`", fields[1])))?;
        let directed = match fields[2] {
            "directed" => true,
            "undirected" => false,
            other => return Err(perr(hline, format!("expected directed|undirected, got `{other}`"))),
        };
        let weighted = match fields.get(3) {
            None => false,
            Some(&"weighted") => true,
            Some(other) => return Err(perr(hline, format!("unknown header flag `{other}`"))),
        };
        if n == 0 {
            return Err(perr(hline, "graph needs at least one vertex".into()));
        }

        // comment-only lines are skipped; truly blank lines are empty lists
        let mut idx = hpos + 1;
        let mut next_line = |what: &str| -> Result<(usize, &str)> {
            loop {
                let Some(&(no, l)) = raw.get(idx) else {
                    return Err(Error::Parse { line: raw.len() + 1, msg: format!("unexpected end of input: expected {what}") });
                };
                idx += 1;
                if l.trim_start().starts_with('#') {
                    continue;
                }
                return Ok((no, l.split('#').next().unwrap_or("")));
            }
        };
        let parse_list = |no: usize, l: &str| -> Result<(Vec<usize>, Vec<u64>)> {
            let mut vs = Vec::new();
            let mut ws = Vec::new();
            for tok in l.split_whitespace() {
                let (v, w) = match tok.split_once(':') {
                    Some((v, w)) => (v, Some(w)),
                    None => (tok, None),
                };
                let v: usize = v.parse().map_err(|_| perr(no, format!("bad vertex id `{v}`")))?;
                if v == 0 || v > n {
                    return Err(perr(no, format!("vertex id {v} out of range 1..={n}")));
                }
                match (w, weighted) {
                    (Some(w), true) => {
                        if w.starts_with('-') {
                            return Err(perr(no, format!("negative weight `{w}`")));
                        }
                        let w: u64 = w.parse().map_err(|_| perr(no, format!("bad weight `{w}`")))?;
                        ws.push(w);
                    }
                    (None, true) => return Err(perr(no, format!("missing weight on `{tok}`"))),
                    (Some(_), false) => return Err(perr(no, format!("weight on `{tok}` in unweighted graph"))),
                    (None, false) => {}
                }
                vs.push(v);
            }
            Ok((vs, ws))
        };

        let mut out = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut out_lines = Vec::with_capacity(n);
        for _ in 0..n {
            let (no, l) = next_line("a neighbor line")?;
            let (vs, ws) = parse_list(no, l)?;
            out.push(vs);
            weights.push(ws);
            out_lines.push(no);
        }
        let mut inn = Vec::new();
        if directed {
            let (no, l) = next_line("`--` separator")?;
            if l.trim() != "--" {
                return Err(perr(no, "expected `--` before in-neighbor lines".into()));
            }
            for _ in 0..n {
                let (no, l) = next_line("an in-neighbor line")?;
                // in-list weights are optional and re-derived from out-lists
                let toks: String = l
                    .split_whitespace()
                    .map(|t| t.split(':').next().unwrap())
                    .collect::<Vec<_>>()
                    .join(" ");
                let saved = weighted;
                let (vs, _) = if saved {
                    let mut vs = Vec::new();
                    for t in toks.split_whitespace() {
                        let v: usize = t.parse().map_err(|_| perr(no, format!("bad vertex id `{t}`")))?;
                        if v == 0 || v > n {
                            return Err(perr(no, format!("vertex id {v} out of range 1..={n}")));
                        }
                        vs.push(v);
                    }
                    (vs, Vec::new())
                } else {
                    parse_list(no, l)?
                };
                inn.push(vs);
            }
        }
        while let Some(&(no, l)) = raw.get(idx) {
            idx += 1;
            let body = l.split('#').next().unwrap_or("");
            if !body.trim().is_empty() {
                return Err(perr(no, "unexpected content after the last adjacency line".into()));
            }
        }

        // structural checks, reported against the first offending line
        let g = if directed {
            AdjacencyGraph::from_lists_unchecked(true, m, out, inn)
        } else {
            AdjacencyGraph::from_lists_unchecked(false, m, out, Vec::new())
        };
        if let Some(v) = g.validate().into_iter().next() {
            let line = match &v {
                Violation::VertexOutOfRange { vertex, .. }
                | Violation::SelfLoop(vertex)
                | Violation::ParallelEdge { u: vertex, .. }
                | Violation::AsymmetricEdge { u: vertex, .. }
                | Violation::InOutMismatch { u: vertex, .. }
                | Violation::AsymmetricWeight { u: vertex, .. } => out_lines[vertex - 1],
                Violation::EdgeCountMismatch { .. } => hline,
            };
            return Err(perr(line, v.to_string()));
        }
        if weighted {
            g.with_weights(weights).map_err(|e| perr(hline, e.to_string()))
        } else {
            Ok(g)
        }
    }

    /// Canonical text form; `parse(to_text(g)) == g`.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {}{}\n",
            self.n,
            self.m,
            if self.directed { "directed" } else { "undirected" },
            if self.is_weighted() { " weighted" } else { "" }
        );
        for v in 1..=self.n {
            let items: Vec<String> = self
                .neighbors(v)
                .iter()
                .enumerate()
                .map(|(j, u)| match self.is_weighted() {
                    true => format!("{u}:{}", self.weight(v, j + 1)),
                    false => u.to_string(),
                })
                .collect();
            s.push_str(&items.join(" "));
            s.push('\n');
        }
        if self.directed {
            s.push_str("--\n");
            for v in 1..=self.n {
                let items: Vec<String> = self.in_neighbors(v).iter().map(u32::to_string).collect();
                s.push_str(&items.join(" "));
                s.push('\n');
            }
        }
        s
    }
}

fn scan(list: &[u32], u: usize) -> Option<usize> {
    list.iter().position(|&x| x as usize == u).map(|p| p + 1)
}

impl Encode for AdjacencyGraph {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.n);
        put_usize(out, self.m);
        put_u8(out, self.directed as u8);
        let offs = |o: &[usize]| o.iter().map(|&x| x as u64).collect::<Vec<_>>();
        put_u64s(out, &offs(&self.out_offsets));
        crate::codec::put_u32s(out, &self.out_targets);
        put_u64s(out, &offs(&self.in_offsets));
        crate::codec::put_u32s(out, &self.in_targets);
        match &self.out_weights {
            None => put_u8(out, 0),
            Some(w) => {
                put_u8(out, 1);
                put_u64s(out, w);
            }
        }
    }
}

impl Decode for AdjacencyGraph {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.usize()?;
        let m = r.usize()?;
        let directed = r.bool()?;
        let lists = |offs: Vec<u64>, targets: Vec<u32>| -> Result<Vec<Vec<usize>>> {
            if offs.is_empty() {
                return Ok(Vec::new());
            }
            let mut out = Vec::with_capacity(offs.len() - 1);
            for w in offs.windows(2) {
                let (a, b) = (w[0] as usize, w[1] as usize);
                if a > b || b > targets.len() {
                    return Err(Error::corrupt("adjacency offsets out of order"));
                }
                out.push(targets[a..b].iter().map(|&x| x as usize).collect());
            }
            Ok(out)
        };
        let out = lists(r.u64s()?, r.u32s()?)?;
        let inn = lists(r.u64s()?, r.u32s()?)?;
        if out.len() != n || (directed && inn.len() != n) {
            return Err(Error::corrupt("adjacency arrays disagree with vertex count"));
        }
        let g = AdjacencyGraph::from_lists_unchecked(directed, m, out, inn);
        if !g.validate().is_empty() {
            return Err(Error::corrupt("embedded graph violates its invariants"));
        }
        if r.bool()? {
            let flat = r.u64s()?;
            if flat.len() != g.out_targets.len() {
                return Err(Error::corrupt("weight array length mismatch"));
            }
            let per_vertex = (1..=n)
                .map(|v| flat[g.out_offsets[v - 1]..g.out_offsets[v]].to_vec())
                .collect();
            return g.with_weights(per_vertex).map_err(Error::corrupt);
        }
        Ok(g)
    }
}
