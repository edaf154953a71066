//! Cut vertices and biconnected components over the lex-DFS tree from
//! vertex 1 of a connected undirected graph.
//!
//! A tree edge `(parent(c), c)` heads a biconnected component when no back
//! edge leaves `c`'s subtree above `parent(c)`. The component is then `c`
//! plus every descendant reached through non-heading tree edges, together
//! with `parent(c)`; its edges are the graph edges from those vertices up to
//! ancestors inside it.

use std::collections::HashSet;

use super::{edge, low_points, Shape};
use crate::bitvec::PlainBitvector;
use crate::codec::{Decode, Encode, Reader};
use crate::dfsindex::TreeIndex;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiconIndex {
    shape: Shape,
    tree: TreeIndex,
    /// Cut vertices.
    h: PlainBitvector,
    /// Child ends of component-heading tree edges.
    head: PlainBitvector,
}

impl BiconIndex {
    pub fn build(g: &AdjacencyGraph, compressed: bool) -> Result<BiconIndex> {
        let lp = low_points(g)?;
        let t = &lp.tree;
        let n = g.n();
        let mut head = vec![false; n + 1];
        let mut cut = vec![false; n + 1];
        for v in 2..=n {
            let p = t.parent(v).expect("connected");
            if lp.low[v] >= t.dfi(p) {
                head[v] = true;
                if p != t.root() {
                    cut[p] = true;
                }
            }
        }
        cut[t.root()] = t.children(t.root()).len() >= 2;
        Ok(BiconIndex {
            shape: Shape::of(g),
            tree: TreeIndex::build(g, Orientation::Forward, t, false, compressed),
            h: PlainBitvector::from_bits(cut[1..].iter().copied()),
            head: PlainBitvector::from_bits(head[1..].iter().copied()),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn tree(&self) -> &TreeIndex {
        &self.tree
    }

    pub fn is_cut(&self, v: usize) -> Result<bool> {
        self.shape.vertex(v)?;
        Ok(self.h.get(v))
    }

    pub fn cut_list(&self) -> Vec<usize> {
        (1..=self.h.count_ones()).map(|j| self.h.select1(j)).collect()
    }

    pub fn component_count(&self) -> usize {
        self.head.count_ones()
    }

    /// Child end of the tree edge heading the component that holds edge `(u, v)`.
    pub fn component_of(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<usize> {
        self.shape.check(g)?;
        self.shape.vertex(u)?;
        self.shape.vertex(v)?;
        if !g.has_edge(u, v) {
            return Err(Error::input(format!("({u}, {v}) is not an edge")));
        }
        let mut x = if self.tree.parent(g, v) == Some(u) {
            v
        } else if self.tree.parent(g, u) == Some(v) || self.tree.dfi(g, u)? > self.tree.dfi(g, v)? {
            u
        } else {
            v
        };
        while !self.head.get(x) {
            x = self.tree.parent(g, x).expect("the climb meets a heading edge");
        }
        Ok(x)
    }

    /// Edges of the component holding `(u, v)`, normalized, in traversal order.
    pub fn edges_of(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<Vec<(usize, usize)>> {
        let x = self.component_of(g, u, v)?;
        Ok(self.peel(g, x))
    }

    pub fn same(&self, g: &AdjacencyGraph, e1: (usize, usize), e2: (usize, usize)) -> Result<bool> {
        Ok(self.component_of(g, e1.0, e1.1)? == self.component_of(g, e2.0, e2.1)?)
    }

    /// Walks down from head `x`, never descending through another heading
    /// edge, collecting edges to vertices on the current path.
    fn peel(&self, g: &AdjacencyGraph, x: usize) -> Vec<(usize, usize)> {
        let p = self.tree.parent(g, x).expect("heads have parents");
        let mut on_path: HashSet<usize> = HashSet::from([p]);
        let mut path = vec![p];
        let mut out = Vec::new();
        // (vertex, entering)
        let mut stack = vec![(x, true)];
        while let Some((w, enter)) = stack.pop() {
            if !enter {
                on_path.remove(&w);
                path.pop();
                continue;
            }
            for &a in g.neighbors(w) {
                if on_path.contains(&(a as usize)) {
                    out.push(edge(a as usize, w));
                }
            }
            on_path.insert(w);
            path.push(w);
            stack.push((w, false));
            for c in self.tree.children(g, w).into_iter().rev() {
                if !self.head.get(c) {
                    stack.push((c, true));
                }
            }
        }
        out
    }

    /// Every component as an edge list, ordered by heading child id.
    pub fn all_components(&self, g: &AdjacencyGraph) -> Vec<Vec<(usize, usize)>> {
        (1..=self.head.count_ones()).map(|j| self.peel(g, self.head.select1(j))).collect()
    }

    pub fn components(&self) -> Vec<(String, usize, usize)> {
        let mut c = self.tree.components();
        c.push(("H".into(), self.h.payload_bits(), self.h.aux_bits()));
        c.push(("heads".into(), self.head.payload_bits(), self.head.aux_bits()));
        c
    }
}

impl Encode for BiconIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.shape.encode(out);
        self.tree.encode(out);
        self.h.encode(out);
        self.head.encode(out);
    }
}

impl Decode for BiconIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let shape = Shape::decode(r)?;
        let tree = TreeIndex::decode(r)?;
        let h = PlainBitvector::decode(r)?;
        let head = PlainBitvector::decode(r)?;
        if tree.arrays().n() != shape.n || h.len() != shape.n || head.len() != shape.n || shape.directed {
            return Err(Error::corrupt("biconnectivity index disagrees with its header"));
        }
        Ok(BiconIndex { shape, tree, h, head })
    }
}
