//! Single-source shortest paths: the shortest-path tree indexed like a DFS
//! tree, with path lengths stored only at minitree roots.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{reached_bits, Shape};
use crate::bitvec::{IntVector, PlainBitvector};
use crate::codec::{put_usize, Decode, Encode, Reader};
use crate::dfsindex::{tree_in_adjacency_order, TreeIndex};
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpIndex {
    shape: Shape,
    source: usize,
    reached: PlainBitvector,
    tree: TreeIndex,
    /// Distance from the source to each minitree root, by rank.
    root_dist: IntVector,
}

/// Dijkstra with a binary heap; parents change only on strict improvement.
pub fn dijkstra(g: &AdjacencyGraph, source: usize) -> Result<(Vec<Option<u64>>, Vec<Option<usize>>)> {
    g.check_vertex(source).map_err(|_| Error::input(format!("source {source} out of range 1..={}", g.n())))?;
    let n = g.n();
    let mut dist: Vec<Option<u64>> = vec![None; n + 1];
    let mut parent = vec![None; n + 1];
    let mut done = vec![false; n + 1];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if std::mem::replace(&mut done[v], true) {
            continue;
        }
        for (j, &u) in g.neighbors(v).iter().enumerate() {
            let u = u as usize;
            let nd = d + g.weight(v, j + 1);
            if !done[u] && dist[u].is_none_or(|old| nd < old) {
                dist[u] = Some(nd);
                parent[u] = Some(v);
                heap.push(Reverse((nd, u)));
            }
        }
    }
    Ok((dist, parent))
}

impl SpIndex {
    pub fn build(g: &AdjacencyGraph, source: usize, compressed: bool) -> Result<SpIndex> {
        let (dist, parent) = dijkstra(g, source)?;
        let t = tree_in_adjacency_order(g, Orientation::Forward, source, &parent, false);
        let tree = TreeIndex::build(g, Orientation::Forward, &t, false, compressed);
        let root_dist: Vec<u64> = (1..=g.n())
            .filter(|&v| tree.cover().is_minitree_root(v))
            .map(|v| dist[v].expect("minitree roots are reached"))
            .collect();
        Ok(SpIndex {
            shape: Shape::of(g),
            source,
            reached: reached_bits(g.n(), &t),
            tree,
            root_dist: IntVector::from_slice(&root_dist),
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn tree(&self) -> &TreeIndex {
        &self.tree
    }

    fn require(&self, g: &AdjacencyGraph, v: usize) -> Result<()> {
        self.shape.check(g)?;
        self.shape.vertex(v)?;
        if !self.reached.get(v) {
            return Err(Error::Unreached(v));
        }
        Ok(())
    }

    /// Length of the shortest path to `v`: edge weights read while climbing to
    /// the minitree root, plus that root's stored distance.
    pub fn dist(&self, g: &AdjacencyGraph, mut v: usize) -> Result<u64> {
        self.require(g, v)?;
        let tc = self.tree.cover();
        let arrays = self.tree.arrays();
        let mut sum = 0;
        while !tc.is_minitree_root(v) {
            let (p, j) = arrays.parent_slot(g, v).expect("non-roots have parents");
            sum += g.in_weight(v, j);
            v = p;
        }
        Ok(sum + self.root_dist.get(tc.root_rank(v)))
    }

    /// Vertices from the source to `v`.
    pub fn path(&self, g: &AdjacencyGraph, mut v: usize) -> Result<Vec<usize>> {
        self.require(g, v)?;
        let mut out = vec![v];
        while let Some(p) = self.tree.parent(g, v) {
            out.push(p);
            v = p;
        }
        out.reverse();
        Ok(out)
    }

    pub fn components(&self) -> Vec<(String, usize, usize)> {
        let mut c = self.tree.components();
        c.push(("root_dist".into(), self.root_dist.bits(), 0));
        c.push(("reached".into(), self.reached.payload_bits(), self.reached.aux_bits()));
        c
    }
}

impl Encode for SpIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.shape.encode(out);
        put_usize(out, self.source);
        self.reached.encode(out);
        self.tree.encode(out);
        self.root_dist.encode(out);
    }
}

impl Decode for SpIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let shape = Shape::decode(r)?;
        let source = r.usize()?;
        let reached = PlainBitvector::decode(r)?;
        let tree = TreeIndex::decode(r)?;
        let root_dist = IntVector::decode(r)?;
        if reached.len() != shape.n
            || tree.arrays().n() != shape.n
            || tree.arrays().root() != source
            || !(1..=shape.n).contains(&source)
            || root_dist.len() != tree.cover().minitree_roots()
        {
            return Err(Error::corrupt("shortest-path index is inconsistent"));
        }
        Ok(SpIndex { shape, source, reached, tree, root_dist })
    }
}
