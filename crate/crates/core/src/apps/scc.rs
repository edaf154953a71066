//! Strongly connected components by two depth-first passes. Each tree of the
//! second pass (over reversed arcs, in decreasing finish time) is one
//! component; the forest is indexed below a virtual root.

use super::conn::dfs_forest;
use super::{ForestIndex, Shape};
use crate::bitvec::IntVector;
use crate::codec::{Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccIndex {
    shape: Shape,
    /// Finish time of each vertex in the first pass.
    finish: IntVector,
    forest: ForestIndex,
}

/// Vertices in increasing finish time of a forward DFS forest.
fn finish_order(g: &AdjacencyGraph) -> Vec<usize> {
    let n = g.n();
    let mut visited = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for s in 1..=n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        stack.push((s, 0));
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            let adj = g.neighbors(v);
            match adj[next..].iter().position(|&u| !visited[u as usize]) {
                Some(off) => {
                    top.1 = next + off + 1;
                    let u = adj[next + off] as usize;
                    visited[u] = true;
                    stack.push((u, 0));
                }
                None => {
                    order.push(v);
                    stack.pop();
                }
            }
        }
    }
    order
}

impl SccIndex {
    pub fn build(g: &AdjacencyGraph, compressed: bool) -> Result<SccIndex> {
        if !g.is_directed() {
            return Err(Error::input("strong components need a directed graph with in-lists"));
        }
        let order = finish_order(g);
        let mut finish = vec![0u64; g.n()];
        for (t, &v) in order.iter().enumerate() {
            finish[v - 1] = t as u64 + 1;
        }
        let parent = dfs_forest(g, Orientation::Reverse, order.iter().rev().copied());
        Ok(SccIndex {
            shape: Shape::of(g),
            finish: IntVector::from_slice(&finish),
            forest: ForestIndex::build(g, Orientation::Reverse, &parent, compressed),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn forest(&self) -> &ForestIndex {
        &self.forest
    }

    pub fn finish_time(&self, v: usize) -> Result<usize> {
        self.shape.vertex(v)?;
        Ok(self.finish.get(v - 1) as usize)
    }

    /// Representative (second-pass tree root) of `v`'s component.
    pub fn label(&self, g: &AdjacencyGraph, v: usize) -> Result<usize> {
        self.shape.check(g)?;
        self.shape.vertex(v)?;
        Ok(self.forest.root_of(g, v))
    }

    pub fn same(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<bool> {
        Ok(self.label(g, u)? == self.label(g, v)?)
    }

    /// Vertices of `v`'s component, ascending.
    pub fn members(&self, g: &AdjacencyGraph, v: usize) -> Result<Vec<usize>> {
        let r = self.label(g, v)?;
        let mut m = self.forest.members(g, r);
        m.sort_unstable();
        Ok(m)
    }

    /// Component representatives, ascending.
    pub fn enumerate(&self) -> Vec<usize> {
        self.forest.roots()
    }

    pub fn components(&self) -> Vec<(String, usize, usize)> {
        let mut c = self.forest.components();
        c.push(("finish".into(), self.finish.bits(), 0));
        c
    }
}

impl Encode for SccIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.shape.encode(out);
        self.finish.encode(out);
        self.forest.encode(out);
    }
}

impl Decode for SccIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let shape = Shape::decode(r)?;
        let finish = IntVector::decode(r)?;
        let forest = ForestIndex::decode(r)?;
        if forest.n() != shape.n || finish.len() != shape.n || !shape.directed {
            return Err(Error::corrupt("strong component index disagrees with its header"));
        }
        Ok(SccIndex { shape, finish, forest })
    }
}
