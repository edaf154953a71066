//! Applications of the tree-cover machinery to other algorithmic trees.

pub mod bicon;
pub mod conn;
pub mod scc;
pub mod sp;
pub mod tecc;

pub use bicon::BiconIndex;
pub use conn::ConnIndex;
pub use scc::SccIndex;
pub use sp::SpIndex;
pub use tecc::{EdgeClass, TeccIndex};

use crate::bitvec::IntVector;
use crate::codec::{put_u8, put_usize, Decode, Encode, Reader};
use crate::dfsindex::TreeIndex;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};
use crate::tree::OrderedTree;

/// Graph shape an index was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub n: usize,
    pub m: usize,
    pub directed: bool,
}

impl Shape {
    pub fn of(g: &AdjacencyGraph) -> Shape {
        Shape { n: g.n(), m: g.m(), directed: g.is_directed() }
    }

    pub fn check(&self, g: &AdjacencyGraph) -> Result<()> {
        if Shape::of(g) != *self {
            return Err(Error::input(format!(
                "graph (n={}, m={}, directed={}) does not match index (n={}, m={}, directed={})",
                g.n(),
                g.m(),
                g.is_directed(),
                self.n,
                self.m,
                self.directed
            )));
        }
        Ok(())
    }

    pub fn tuple(&self) -> (usize, usize, bool) {
        (self.n, self.m, self.directed)
    }

    pub fn vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::range("vertex", v, 1, self.n));
        }
        Ok(())
    }
}

impl Encode for Shape {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.n);
        put_usize(out, self.m);
        put_u8(out, self.directed as u8);
    }
}

impl Decode for Shape {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(Shape { n: r.usize()?, m: r.usize()?, directed: r.bool()? })
    }
}

/// A spanning forest hung below virtual root `n + 1`, with the forest root
/// above every minitree root stored so any vertex's tree is found by a
/// climb inside one minitree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestIndex {
    tree: TreeIndex,
    /// Forest root above each minitree root, by rank; 0 for the virtual root.
    labels: IntVector,
}

impl ForestIndex {
    /// `parent[v]` is `None` for forest roots.
    pub fn build(g: &AdjacencyGraph, orient: Orientation, parent: &[Option<usize>], compressed: bool) -> ForestIndex {
        let n = g.n();
        let t = crate::dfsindex::tree_in_adjacency_order(g, orient, n + 1, parent, true);
        let tree = TreeIndex::build(g, orient, &t, true, compressed);
        let labels: Vec<u64> = (1..=n + 1)
            .filter(|&v| tree.cover().is_minitree_root(v))
            .map(|v| forest_root(&t, n, v) as u64)
            .collect();
        ForestIndex { tree, labels: IntVector::from_slice(&labels) }
    }

    pub fn tree(&self) -> &TreeIndex {
        &self.tree
    }

    pub fn n(&self) -> usize {
        self.tree.arrays().n()
    }

    /// Root of the forest tree holding `v`.
    pub fn root_of(&self, g: &AdjacencyGraph, mut v: usize) -> usize {
        let n = self.n();
        let tc = self.tree.cover();
        loop {
            if tc.is_minitree_root(v) {
                return self.labels.get(tc.root_rank(v)) as usize;
            }
            match self.tree.parent(g, v) {
                Some(p) if p <= n => v = p,
                _ => return v,
            }
        }
    }

    /// Forest roots in ascending id order.
    pub fn roots(&self) -> Vec<usize> {
        let marks = self.tree.arrays().parentless().expect("forests keep their root marks");
        (1..=marks.count_ones()).map(|j| marks.select1(j)).collect()
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.tree.arrays().parentless().is_some_and(|b| b.get(v))
    }

    /// Vertices of the forest tree rooted at `r`, in preorder.
    pub fn members(&self, g: &AdjacencyGraph, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.tree.children(g, v).into_iter().rev());
        }
        out
    }

    pub fn components(&self) -> Vec<(String, usize, usize)> {
        let mut c = self.tree.components();
        c.push(("labels".into(), self.labels.bits(), 0));
        c
    }

    pub fn total_bits(&self) -> usize {
        self.tree.total_bits() + self.labels.bits()
    }
}

fn forest_root(t: &OrderedTree, n: usize, mut v: usize) -> usize {
    if v > n {
        return 0;
    }
    while let Some(p) = t.parent(v).filter(|&p| p <= n) {
        v = p;
    }
    v
}

impl Encode for ForestIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.tree.encode(out);
        self.labels.encode(out);
    }
}

impl Decode for ForestIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let tree = TreeIndex::decode(r)?;
        let labels = IntVector::decode(r)?;
        let n = tree.arrays().n();
        if !tree.arrays().has_virtual_root()
            || tree.arrays().parentless().is_none()
            || labels.len() != tree.cover().minitree_roots()
            || labels.iter().any(|x| x as usize > n)
        {
            return Err(Error::corrupt("forest index is inconsistent"));
        }
        Ok(ForestIndex { tree, labels })
    }
}

/// Reached-vertex marks plus a rooted tree index, shared by single-tree apps.
pub(crate) fn reached_bits(n: usize, tree: &OrderedTree) -> crate::bitvec::PlainBitvector {
    let mut seen: Vec<usize> = tree.order().iter().map(|&v| v as usize).collect();
    seen.sort_unstable();
    crate::bitvec::PlainBitvector::from_ones(n, seen)
}

/// Normalized undirected edge.
pub fn edge(u: usize, v: usize) -> (usize, usize) {
    if u < v { (u, v) } else { (v, u) }
}

/// Lex-DFS tree from vertex 1 over a connected undirected graph, with DFIs
/// and low points (minimum DFI reachable by one back edge from a subtree).
pub(crate) struct LowPoints {
    pub tree: OrderedTree,
    pub low: Vec<usize>,
}

pub(crate) fn low_points(g: &AdjacencyGraph) -> Result<LowPoints> {
    if g.is_directed() {
        return Err(Error::input("graph must be undirected"));
    }
    if g.n() == 0 {
        return Err(Error::input("graph has no vertices"));
    }
    let r = crate::lexdfs::oracle_dfs(g, 1)?;
    if r.reached_count() != g.n() {
        return Err(Error::input("graph must be connected"));
    }
    let t = r.tree;
    let mut low = vec![0usize; g.n() + 1];
    for &v in t.order().iter().rev() {
        let v = v as usize;
        let mut l = t.dfi(v);
        for &u in g.neighbors(v) {
            let u = u as usize;
            if t.parent(u) == Some(v) {
                l = l.min(low[u]);
            } else if t.parent(v) != Some(u) {
                l = l.min(t.dfi(u));
            }
        }
        low[v] = l;
    }
    Ok(LowPoints { tree: t, low })
}
