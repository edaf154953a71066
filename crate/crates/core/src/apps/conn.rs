//! Connectivity over a DFS forest: two vertices are connected iff they lie
//! in the same forest tree.

use super::{ForestIndex, Shape};
use crate::codec::{Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};
use crate::lexdfs::visit_from;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnIndex {
    shape: Shape,
    forest: ForestIndex,
}

/// Lex-DFS forest restarting at the lowest-id unvisited vertex.
pub(crate) fn dfs_forest(g: &AdjacencyGraph, orient: Orientation, starts: impl IntoIterator<Item = usize>) -> Vec<Option<usize>> {
    let n = g.n();
    let mut visited = vec![false; n + 1];
    let mut children = vec![Vec::new(); n + 1];
    let mut slots = vec![(0u32, 0u32); n + 1];
    for s in starts {
        if !visited[s] {
            visit_from(g, s, orient, &mut visited, &mut children, &mut slots);
        }
    }
    let mut parent = vec![None; n + 1];
    for (v, cs) in children.iter().enumerate() {
        for &c in cs {
            parent[c as usize] = Some(v);
        }
    }
    parent
}

impl ConnIndex {
    pub fn build(g: &AdjacencyGraph, compressed: bool) -> Result<ConnIndex> {
        if g.is_directed() {
            return Err(Error::input("connectivity needs an undirected graph"));
        }
        let parent = dfs_forest(g, Orientation::Forward, 1..=g.n());
        Ok(ConnIndex { shape: Shape::of(g), forest: ForestIndex::build(g, Orientation::Forward, &parent, compressed) })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn forest(&self) -> &ForestIndex {
        &self.forest
    }

    /// Root of the DFS tree holding `v`; equal labels mean connected.
    pub fn label(&self, g: &AdjacencyGraph, v: usize) -> Result<usize> {
        self.shape.check(g)?;
        self.shape.vertex(v)?;
        Ok(self.forest.root_of(g, v))
    }

    pub fn connected(&self, g: &AdjacencyGraph, u: usize, v: usize) -> Result<bool> {
        Ok(self.label(g, u)? == self.label(g, v)?)
    }

    pub fn component_count(&self) -> usize {
        self.forest.roots().len()
    }

    pub fn components(&self) -> Vec<(String, usize, usize)> {
        self.forest.components()
    }
}

impl Encode for ConnIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.shape.encode(out);
        self.forest.encode(out);
    }
}

impl Decode for ConnIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let shape = Shape::decode(r)?;
        let forest = ForestIndex::decode(r)?;
        if forest.n() != shape.n {
            return Err(Error::corrupt("connectivity index disagrees with its header"));
        }
        Ok(ConnIndex { shape, forest })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }

    #[test]
    fn two_components() {
        let g = AdjacencyGraph::undirected(vec![vec![2], vec![1, 3], vec![2], vec![5], vec![4]]).unwrap();
        let c = ConnIndex::build(&g, false).unwrap();
        assert!(c.connected(&g, 1, 3).unwrap());
        assert!(c.connected(&g, 4, 5).unwrap());
        assert!(!c.connected(&g, 3, 4).unwrap());
        assert!(c.connected(&g, 2, 2).unwrap());
        assert_eq!(c.component_count(), 2);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn matches_union_find(n in 1usize..200, m in 0usize..300, seed: u64) {
            let g = crate::gen::undirected(n, m, seed);
            let c = ConnIndex::build(&g, seed % 2 == 0).unwrap();
            let mut p: Vec<usize> = (0..=n).collect();
            for (u, v) in g.edges() {
                let (a, b) = (find(&mut p, u), find(&mut p, v));
                p[a] = b;
            }
            let labels: Vec<usize> = (1..=n).map(|v| c.label(&g, v).unwrap()).collect();
            for u in 1..=n {
                for v in 1..=n {
                    proptest::prop_assert_eq!(labels[u - 1] == labels[v - 1], find(&mut p, u) == find(&mut p, v));
                }
            }
            let back: ConnIndex = crate::codec::from_bytes(&crate::codec::to_bytes(&c)).unwrap();
            proptest::prop_assert_eq!(back, c);
        }
    }
}
