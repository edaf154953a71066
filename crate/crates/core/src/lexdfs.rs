//! Reference lexicographic DFS and direct answers to every query kind.
//!
//! This is the ground truth the compact indexes are checked against, and
//! the first stage of building them.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};
use crate::tree::OrderedTree;

/// Outcome of a lex-DFS from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsResult {
    pub source: usize,
    pub tree: OrderedTree,
    /// For each non-root reached `v`: slot of `v` in its parent's child-side
    /// list and slot of the parent in `v`'s parent-side list. `(0, 0)` otherwise.
    pub tree_edge_slots: Vec<(u32, u32)>,
}

impl DfsResult {
    pub fn reached(&self, v: usize) -> bool {
        self.tree.contains(v)
    }

    pub fn reached_count(&self) -> usize {
        self.tree.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.tree.parent(v)
    }

    pub fn dfi(&self, v: usize) -> Option<usize> {
        self.reached(v).then(|| self.tree.dfi(v))
    }

    pub fn order(&self) -> &[u32] {
        self.tree.order()
    }

    pub fn children(&self, v: usize) -> &[u32] {
        self.tree.children(v)
    }

    pub fn depth(&self, v: usize) -> usize {
        self.tree.depth(v)
    }

    pub fn subtree_size(&self, v: usize) -> Result<usize> {
        self.require(v)?;
        Ok(self.tree.subtree_size(v))
    }

    fn require(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.tree.node_count() {
            return Err(Error::range("vertex", v, 1, self.tree.node_count()));
        }
        if !self.reached(v) {
            return Err(Error::Unreached(v));
        }
        Ok(())
    }
}

/// Lex-DFS from `source` along out-edges.
pub fn oracle_dfs(g: &AdjacencyGraph, source: usize) -> Result<DfsResult> {
    lex_dfs(g, source, Orientation::Forward)
}

/// Lex-DFS from `source`, always taking the first unvisited neighbor in
/// adjacency order. Iterative: explicit stack of (vertex, next slot) plus a
/// visited array.
pub fn lex_dfs(g: &AdjacencyGraph, source: usize, orient: Orientation) -> Result<DfsResult> {
    if source == 0 || source > g.n() {
        return Err(Error::input(format!("source {source} out of range 1..={}", g.n())));
    }
    let n = g.n();
    let mut visited = vec![false; n + 1];
    let mut children = vec![Vec::new(); n + 1];
    let mut slots = vec![(0u32, 0u32); n + 1];
    visit_from(g, source, orient, &mut visited, &mut children, &mut slots);
    Ok(DfsResult {
        source,
        tree: OrderedTree::from_children(source, children),
        tree_edge_slots: slots,
    })
}

/// Runs one lex-DFS tree from `root`, skipping vertices already visited.
pub(crate) fn visit_from(
    g: &AdjacencyGraph,
    root: usize,
    orient: Orientation,
    visited: &mut [bool],
    children: &mut [Vec<u32>],
    slots: &mut [(u32, u32)],
) {
    visited[root] = true;
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        let adj = g.child_side(v, orient);
        match adj[next..].iter().position(|&u| !visited[u as usize]) {
            Some(off) => {
                let slot = next + off;
                top.1 = slot + 1;
                let u = adj[slot] as usize;
                visited[u] = true;
                children[v].push(u as u32);
                let back = g
                    .parent_side(u, orient)
                    .iter()
                    .position(|&x| x as usize == v)
                    .expect("every tree edge appears on both sides");
                slots[u] = (slot as u32 + 1, back as u32 + 1);
                stack.push((u, 0));
            }
            None => {
                stack.pop();
            }
        }
    }
}

/// The eight query kinds on a DFS tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    /// 1(a): which of two vertices the DFS visits first.
    FirstVisited(usize, usize),
    /// 1(b): is `u` a proper ancestor of `v`.
    IsAncestor(usize, usize),
    /// 2(a)
    Parent(usize),
    /// 2(b)
    NumChildren(usize),
    /// 2(c)
    Children(usize),
    /// 2(d)
    Dfi(usize),
    /// 3: every reached vertex in DFI order.
    Preorder,
    /// 4: the vertex with a given DFI.
    VertexAt(usize),
}

impl Query {
    /// Short name used by the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Query::FirstVisited(..) => "first-visited",
            Query::IsAncestor(..) => "is-ancestor",
            Query::Parent(_) => "parent",
            Query::NumChildren(_) => "num-children",
            Query::Children(_) => "children",
            Query::Dfi(_) => "dfi",
            Query::Preorder => "preorder",
            Query::VertexAt(_) => "vertex-at",
        }
    }

    /// Builds a query from an operation name (or its numeric alias) and
    /// integer arguments.
    pub fn parse(op: &str, args: &[usize]) -> Result<Query> {
        let want = |k: usize| -> Result<()> {
            if args.len() != k {
                return Err(Error::input(format!("operation `{op}` takes {k} argument(s), got {}", args.len())));
            }
            Ok(())
        };
        let q = match op {
            "first-visited" | "1a" => {
                want(2)?;
                Query::FirstVisited(args[0], args[1])
            }
            "is-ancestor" | "1b" => {
                want(2)?;
                Query::IsAncestor(args[0], args[1])
            }
            "parent" | "2a" => {
                want(1)?;
                Query::Parent(args[0])
            }
            "num-children" | "2b" => {
                want(1)?;
                Query::NumChildren(args[0])
            }
            "children" | "2c" => {
                want(1)?;
                Query::Children(args[0])
            }
            "dfi" | "2d" => {
                want(1)?;
                Query::Dfi(args[0])
            }
            "preorder" | "3" => {
                want(0)?;
                Query::Preorder
            }
            "vertex-at" | "4" => {
                want(1)?;
                Query::VertexAt(args[0])
            }
            other => return Err(Error::input(format!("unknown operation `{other}`"))),
        };
        Ok(q)
    }
}

/// Answer to a [`Query`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Vertex(Option<usize>),
    Bool(bool),
    Count(usize),
    List(Vec<usize>),
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Vertex(Some(v)) | Answer::Count(v) => write!(f, "{v}"),
            Answer::Vertex(None) => write!(f, "none"),
            Answer::Bool(b) => write!(f, "{b}"),
            Answer::List(l) => {
                let parts: Vec<String> = l.iter().map(usize::to_string).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

/// Anything that answers the DFS query kinds.
pub trait DfsQueries {
    fn answer(&self, q: &Query) -> Result<Answer>;
}

impl DfsQueries for DfsResult {
    fn answer(&self, q: &Query) -> Result<Answer> {
        oracle_query(self, q)
    }
}

/// Answers `q` by direct lookup in the DFS arrays.
pub fn oracle_query(r: &DfsResult, q: &Query) -> Result<Answer> {
    let t = &r.tree;
    Ok(match *q {
        Query::FirstVisited(u, v) => {
            r.require(u)?;
            r.require(v)?;
            Answer::Vertex(Some(if t.dfi(u) <= t.dfi(v) { u } else { v }))
        }
        Query::IsAncestor(u, v) => {
            r.require(u)?;
            r.require(v)?;
            Answer::Bool(t.is_ancestor(u, v))
        }
        Query::Parent(v) => {
            r.require(v)?;
            Answer::Vertex(t.parent(v))
        }
        Query::NumChildren(v) => {
            r.require(v)?;
            Answer::Count(t.children(v).len())
        }
        Query::Children(v) => {
            r.require(v)?;
            Answer::List(t.children(v).iter().map(|&c| c as usize).collect())
        }
        Query::Dfi(v) => {
            r.require(v)?;
            Answer::Count(t.dfi(v))
        }
        Query::Preorder => Answer::List(t.order().iter().map(|&c| c as usize).collect()),
        Query::VertexAt(i) => {
            if i == 0 || i > t.len() {
                return Err(Error::range("dfi", i, 1, t.len()));
            }
            Answer::Vertex(Some(t.node_at(i)))
        }
    })
}

/// Every valid query over the reached vertices (quadratic in their number).
pub fn all_queries(r: &DfsResult) -> Vec<Query> {
    let vs: Vec<usize> = r.order().iter().map(|&v| v as usize).collect();
    let mut qs = vec![Query::Preorder];
    for &v in &vs {
        qs.push(Query::Parent(v));
        qs.push(Query::NumChildren(v));
        qs.push(Query::Children(v));
        qs.push(Query::Dfi(v));
        for &u in &vs {
            qs.push(Query::FirstVisited(u, v));
            qs.push(Query::IsAncestor(u, v));
        }
    }
    qs.extend((1..=vs.len()).map(Query::VertexAt));
    qs
}
