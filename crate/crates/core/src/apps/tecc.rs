//! Bridges and 2-edge-connected components over the lex-DFS tree from
//! vertex 1 of a connected undirected graph. Only tree edges can be
//! bridges; `Y` marks them by their child end.

use std::collections::HashSet;

use super::{edge, low_points, Shape};
use crate::bitvec::PlainBitvector;
use crate::codec::{Decode, Encode, Reader};
use crate::dfsindex::TreeIndex;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeccIndex {
    shape: Shape,
    tree: TreeIndex,
    y: PlainBitvector,
}

/// Equivalence class of an edge: a bridge is alone in its class; any other
/// edge belongs to the component whose top vertex is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Bridge(usize, usize),
    Component(usize),
}

impl TeccIndex {
    pub fn build(g: &AdjacencyGraph, compressed: bool) -> Result<TeccIndex> {
        let lp = low_points(g)?;
        let t = &lp.tree;
        let y: Vec<bool> = (1..=g.n()).map(|v| t.parent(v).is_some_and(|p| lp.low[v] > t.dfi(p))).collect();
        Ok(TeccIndex {
            shape: Shape::of(g),
            tree: TreeIndex::build(g, Orientation::Forward, t, false, compressed),
            y: PlainBitvector::from_bits(y),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn tree(&self) -> &TreeIndex {
        &self.tree
    }

    fn check_edge(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<()> {
        self.shape.check(g)?;
        self.shape.vertex(u)?;
        self.shape.vertex(v)?;
        if !g.has_edge(u, v) {
            return Err(Error::input(format!("({u}, {v}) is not an edge")));
        }
        Ok(())
    }

    /// Two parent probes and one bit.
    pub fn is_bridge(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<bool> {
        self.check_edge(g, u, v)?;
        Ok(if self.tree.parent(g, v) == Some(u) {
            self.y.get(v)
        } else if self.tree.parent(g, u) == Some(v) {
            self.y.get(u)
        } else {
            false
        })
    }

    pub fn bridge_list(&self, g: &AdjacencyGraph) -> Result<Vec<(usize, usize)>> {
        self.shape.check(g)?;
        Ok((1..=self.y.count_ones())
            .map(|j| {
                let c = self.y.select1(j);
                edge(self.tree.parent(g, c).expect("bridges are tree edges"), c)
            })
            .collect())
    }

    /// Top vertex of the 2-edge-connected component holding `v`.
    pub fn top(&self, g: &AdjacencyGraph, mut v: usize) -> usize {
        while !self.y.get(v) {
            match self.tree.parent(g, v) {
                Some(p) => v = p,
                None => break,
            }
        }
        v
    }

    pub fn class_of(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<EdgeClass> {
        if self.is_bridge(g, u, v)? {
            let (a, b) = edge(u, v);
            return Ok(EdgeClass::Bridge(a, b));
        }
        Ok(EdgeClass::Component(self.top(g, u)))
    }

    pub fn same(&self, g: &AdjacencyGraph, e1: (usize, usize), e2: (usize, usize)) -> Result<bool> {
        Ok(self.class_of(g, e1.0, e1.1)? == self.class_of(g, e2.0, e2.1)?)
    }

    /// Edges in the class of `(u, v)`, normalized, in traversal order.
    pub fn edges_of(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<Vec<(usize, usize)>> {
        Ok(match self.class_of(g, u, v)? {
            EdgeClass::Bridge(a, b) => vec![(a, b)],
            EdgeClass::Component(x) => self.peel(g, x),
        })
    }

    /// Vertices of the component with top `x`, in preorder.
    pub fn vertices_of(&self, g: &AdjacencyGraph, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(w) = stack.pop() {
            out.push(w);
            for c in self.tree.children(g, w).into_iter().rev() {
                if !self.y.get(c) {
                    stack.push(c);
                }
            }
        }
        out
    }

    fn peel(&self, g: &AdjacencyGraph, x: usize) -> Vec<(usize, usize)> {
        let mut on_path: HashSet<usize> = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![(x, true)];
        while let Some((w, enter)) = stack.pop() {
            if !enter {
                on_path.remove(&w);
                continue;
            }
            for &a in g.neighbors(w) {
                if on_path.contains(&(a as usize)) {
                    out.push(edge(a as usize, w));
                }
            }
            on_path.insert(w);
            stack.push((w, false));
            for c in self.tree.children(g, w).into_iter().rev() {
                if !self.y.get(c) {
                    stack.push((c, true));
                }
            }
        }
        out
    }

    /// Component tops: the tree root and every bridge's child end.
    pub fn tops(&self) -> Vec<usize> {
        let mut t: Vec<usize> = (1..=self.y.count_ones()).map(|j| self.y.select1(j)).collect();
        t.push(self.tree.arrays().root());
        t.sort_unstable();
        t
    }

    pub fn components(&self) -> Vec<(String, usize, usize)> {
        let mut c = self.tree.components();
        c.push(("Y".into(), self.y.payload_bits(), self.y.aux_bits()));
        c
    }
}

impl Encode for TeccIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.shape.encode(out);
        self.tree.encode(out);
        self.y.encode(out);
    }
}

impl Decode for TeccIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let shape = Shape::decode(r)?;
        let tree = TreeIndex::decode(r)?;
        let y = PlainBitvector::decode(r)?;
        if tree.arrays().n() != shape.n || y.len() != shape.n || shape.directed {
            return Err(Error::corrupt("2-edge-connectivity index disagrees with its header"));
        }
        Ok(TeccIndex { shape, tree, y })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn connected_without(g: &AdjacencyGraph, cut: (usize, usize)) -> bool {
        let n = g.n();
        let mut seen = vec![false; n + 1];
        seen[1] = true;
        let mut q = vec![1];
        while let Some(v) = q.pop() {
            for &u in g.neighbors(v) {
                let u = u as usize;
                if edge(u, v) != cut && !std::mem::replace(&mut seen[u], true) {
                    q.push(u);
                }
            }
        }
        seen[1..].iter().all(|&s| s)
    }

    #[test]
    fn path_and_cycle() {
        let path = AdjacencyGraph::undirected(vec![vec![2], vec![1, 3], vec![2]]).unwrap();
        let t = TeccIndex::build(&path, false).unwrap();
        assert!(t.is_bridge(&path, 1, 2).unwrap() && t.is_bridge(&path, 3, 2).unwrap());
        assert_eq!(t.bridge_list(&path).unwrap(), [(1, 2), (2, 3)]);
        let cyc = AdjacencyGraph::undirected(vec![vec![2, 4], vec![1, 3], vec![2, 4], vec![3, 1]]).unwrap();
        let t = TeccIndex::build(&cyc, false).unwrap();
        assert!(t.bridge_list(&cyc).unwrap().is_empty());
        assert_eq!(t.edges_of(&cyc, 1, 4).unwrap().len(), 4);
        assert!(t.is_bridge(&cyc, 1, 3).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn bridges_match_removal(n in 1usize..80, extra in 0usize..60, seed: u64) {
            let g = crate::gen::connected_undirected(n, n - 1 + extra, seed);
            let t = TeccIndex::build(&g, seed % 2 == 1).unwrap();
            for (u, v) in g.edges() {
                proptest::prop_assert_eq!(t.is_bridge(&g, u, v).unwrap(), !connected_without(&g, edge(u, v)));
                let class = t.edges_of(&g, u, v).unwrap();
                proptest::prop_assert!(class.contains(&edge(u, v)));
            }
            let back: TeccIndex = crate::codec::from_bytes(&crate::codec::to_bytes(&t)).unwrap();
            proptest::prop_assert_eq!(back, t);
        }
    }
}
