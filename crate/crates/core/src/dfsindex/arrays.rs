//! Parent/child arrays over unary degree sequences.
//!
//! `D` holds, for every vertex in id order, a 1 followed by one 0 per slot
//! of its child-side adjacency array, so slot `j` of `v` sits at
//! `select1(D, v) + j`. `E` marks the slots holding tree children. The
//! parent-side array (`D` itself when undirected, the in-list sequence when
//! directed) carries `P`, one mark per vertex that has a parent. `D_T` is
//! the unary sequence of tree degrees with a closing 1.

use crate::bitvec::{BitArray, PlainBitvector};
use crate::codec::{put_u8, put_usize, Decode, Encode, Reader, Sections};
use crate::format::section;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};
use crate::tree::OrderedTree;

/// Navigation primitives every tree representation offers.
pub trait TreeNav {
    fn parent(&self, v: usize) -> Option<usize>;
    fn num_children(&self, v: usize) -> usize;
    /// `j`-th child of `v`, 1-based.
    fn child(&self, v: usize, j: usize) -> usize;
    /// Index of child `c` among `p`'s children, 1-based.
    fn child_index(&self, p: usize, c: usize) -> usize;
    /// The number recorded to find child `c` of `p` again later.
    fn slot_of(&self, p: usize, c: usize) -> usize;
    /// Child recorded under `slot`, and its index among `p`'s children.
    fn child_at_slot(&self, p: usize, slot: usize) -> (usize, usize);
}

impl TreeNav for OrderedTree {
    fn parent(&self, v: usize) -> Option<usize> {
        OrderedTree::parent(self, v)
    }

    fn num_children(&self, v: usize) -> usize {
        self.children(v).len()
    }

    fn child(&self, v: usize, j: usize) -> usize {
        self.children(v)[j - 1] as usize
    }

    fn child_index(&self, p: usize, c: usize) -> usize {
        self.children(p).iter().position(|&x| x as usize == c).unwrap() + 1
    }

    fn slot_of(&self, p: usize, c: usize) -> usize {
        self.child_index(p, c)
    }

    fn child_at_slot(&self, p: usize, slot: usize) -> (usize, usize) {
        (self.child(p, slot), slot)
    }
}

/// Orders a tree given by parent pointers so that each node's children
/// follow its child-side adjacency order. With `virtual_root`, parentless
/// vertices become children of vertex `n + 1` in ascending id order.
pub fn tree_in_adjacency_order(
    g: &AdjacencyGraph,
    orient: Orientation,
    root: usize,
    parent: &[Option<usize>],
    virtual_root: bool,
) -> OrderedTree {
    let n = g.n();
    let mut children = vec![Vec::new(); n + 1 + virtual_root as usize];
    for p in 1..=n {
        for &u in g.child_side(p, orient) {
            if parent[u as usize] == Some(p) {
                children[p].push(u);
            }
        }
    }
    if virtual_root {
        children[n + 1] = (1..=n as u32).filter(|&v| parent[v as usize].is_none()).collect();
    }
    OrderedTree::from_children(root, children)
}

/// The unary-degree parent/child arrays of one tree (or forest) over a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeArrays {
    n: usize,
    orient: Orientation,
    root: usize,
    virtual_root: bool,
    d: BitArray,
    e: BitArray,
    /// Parent-side degree sequence; `None` when it coincides with `d`.
    d2: Option<BitArray>,
    p: BitArray,
    dt: PlainBitvector,
    /// Vertices without a parent mark, kept unless that is only the root.
    no_parent: Option<PlainBitvector>,
}

fn unary(g: &AdjacencyGraph, side: impl Fn(usize) -> usize) -> (Vec<usize>, usize) {
    let mut starts = Vec::with_capacity(g.n() + 1);
    let mut pos = 0;
    starts.push(0);
    for v in 1..=g.n() {
        pos += 1;
        starts.push(pos);
        pos += side(v);
    }
    (starts, pos)
}

impl TreeArrays {
    /// Builds the arrays for `tree`, whose children must already be in
    /// adjacency order (see [`tree_in_adjacency_order`]). With
    /// `virtual_root`, `tree.root()` is `n + 1` and its children are the
    /// parentless vertices.
    pub fn build(
        g: &AdjacencyGraph,
        orient: Orientation,
        tree: &OrderedTree,
        virtual_root: bool,
        compressed: bool,
    ) -> TreeArrays {
        let n = g.n();
        let separate = g.is_directed();
        let (dstart, dlen) = unary(g, |v| g.child_side(v, orient).len());
        let mut e_ones = Vec::new();
        for v in 1..=n {
            for (j, &u) in g.child_side(v, orient).iter().enumerate() {
                if tree.parent(u as usize) == Some(v) {
                    e_ones.push(dstart[v] + j + 1);
                }
            }
        }
        let (pstart, plen) = if separate {
            unary(g, |v| g.parent_side(v, orient).len())
        } else {
            (dstart.clone(), dlen)
        };
        let mut p_ones = Vec::new();
        let mut parentless = Vec::new();
        for v in 1..=n {
            match tree.parent(v).filter(|&p| p <= n) {
                Some(p) => {
                    let j = g
                        .parent_side(v, orient)
                        .iter()
                        .position(|&x| x as usize == p)
                        .expect("tree edges are graph edges");
                    p_ones.push(pstart[v] + j + 1);
                }
                None => parentless.push(v),
            }
        }
        let mut dt_ones = Vec::with_capacity(n + 1);
        let mut pos = 0;
        for v in 1..=n {
            pos += 1;
            dt_ones.push(pos);
            pos += tree.children(v).len();
        }
        pos += 1;
        dt_ones.push(pos);

        let plain = |len: usize, ones: Vec<usize>| PlainBitvector::from_ones(len, ones);
        let d = BitArray::build(plain(dlen, dstart[1..].to_vec()), compressed);
        let d2 = separate.then(|| BitArray::build(plain(plen, pstart[1..].to_vec()), compressed));
        let root = tree.root();
        let no_parent = (virtual_root || parentless != [root]).then(|| plain(n, parentless));
        TreeArrays {
            n,
            orient,
            root,
            virtual_root,
            e: BitArray::build(plain(dlen, e_ones), compressed),
            p: BitArray::build(plain(plen, p_ones), compressed),
            d,
            d2,
            dt: plain(pos, dt_ones),
            no_parent,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn orientation(&self) -> Orientation {
        self.orient
    }

    pub fn has_virtual_root(&self) -> bool {
        self.virtual_root
    }

    pub fn d(&self) -> &BitArray {
        &self.d
    }

    pub fn e(&self) -> &BitArray {
        &self.e
    }

    pub fn p(&self) -> &BitArray {
        &self.p
    }

    /// Parent-side degree sequence (`D2` for directed graphs).
    pub fn d_parent(&self) -> &BitArray {
        self.d2.as_ref().unwrap_or(&self.d)
    }

    pub fn dt(&self) -> &PlainBitvector {
        &self.dt
    }

    pub fn is_compressed(&self) -> bool {
        self.d.is_compressed()
    }

    /// Named bit arrays for space accounting.
    pub fn components(&self) -> Vec<(&'static str, usize, usize)> {
        let mut out = Vec::new();
        let directed = self.d2.is_some();
        out.push((if directed { "D1" } else { "D" }, self.d.payload_bits(), self.d.aux_bits()));
        out.push((if directed { "E1" } else { "E" }, self.e.payload_bits(), self.e.aux_bits()));
        if let Some(d2) = &self.d2 {
            out.push(("D2", d2.payload_bits(), d2.aux_bits()));
        }
        out.push((if directed { "E2" } else { "P" }, self.p.payload_bits(), self.p.aux_bits()));
        out.push(("D_T", self.dt.payload_bits(), self.dt.aux_bits()));
        if let Some(np) = &self.no_parent {
            out.push(("roots", np.payload_bits(), np.aux_bits()));
        }
        out
    }

    pub fn total_bits(&self) -> usize {
        self.components().iter().map(|(_, p, a)| p + a).sum()
    }

    /// Rank of `v` among vertices carrying a parent mark.
    #[inline]
    fn parent_rank(&self, v: usize) -> usize {
        match &self.no_parent {
            Some(np) => v - np.rank1(v),
            None => v - (v > self.root) as usize,
        }
    }

    #[inline]
    fn has_no_parent(&self, v: usize) -> bool {
        match &self.no_parent {
            Some(np) => np.get(v),
            None => v == self.root,
        }
    }

    /// Vertices without a parent, when not just the root.
    pub fn parentless(&self) -> Option<&PlainBitvector> {
        self.no_parent.as_ref()
    }

    /// Forest roots hang below the virtual root.
    fn virtual_children(&self) -> &PlainBitvector {
        self.no_parent.as_ref().expect("forests keep their root marks")
    }

    /// Parent of `v` and the slot of the parent in `v`'s parent-side array.
    #[inline]
    pub fn parent_slot(&self, g: &AdjacencyGraph, v: usize) -> Option<(usize, usize)> {
        if v > self.n {
            return None;
        }
        if self.has_no_parent(v) {
            return self.virtual_root.then_some((self.n + 1, 0));
        }
        let k = self.parent_rank(v);
        let j = self.p.select1(k) - self.d_parent().select1(v);
        Some((g.parent_side(v, self.orient)[j - 1] as usize, j))
    }

    #[inline]
    pub fn num_children(&self, v: usize) -> usize {
        if v > self.n {
            return self.virtual_children().count_ones();
        }
        self.dt.select1(v + 1) - self.dt.select1(v) - 1
    }

    /// Tree children of vertices `1..v`.
    #[inline]
    fn child_base(&self, v: usize) -> usize {
        self.dt.select1(v) - v
    }

    #[inline]
    pub fn child(&self, g: &AdjacencyGraph, v: usize, j: usize) -> usize {
        if v > self.n {
            return self.virtual_children().select1(j);
        }
        let slot = self.e.select1(self.child_base(v) + j) - self.d.select1(v);
        g.child_side(v, self.orient)[slot - 1] as usize
    }

    fn index_of_slot(&self, v: usize, slot: usize) -> usize {
        self.e.rank1(self.d.select1(v) + slot) - self.child_base(v)
    }

    pub fn bind<'a>(&'a self, g: &'a AdjacencyGraph) -> GraphTree<'a> {
        GraphTree { a: self, g }
    }
}

/// Tree arrays paired with the graph they index.
#[derive(Clone, Copy)]
pub struct GraphTree<'a> {
    pub a: &'a TreeArrays,
    pub g: &'a AdjacencyGraph,
}

impl TreeNav for GraphTree<'_> {
    #[inline]
    fn parent(&self, v: usize) -> Option<usize> {
        self.a.parent_slot(self.g, v).map(|(p, _)| p)
    }

    #[inline]
    fn num_children(&self, v: usize) -> usize {
        self.a.num_children(v)
    }

    #[inline]
    fn child(&self, v: usize, j: usize) -> usize {
        self.a.child(self.g, v, j)
    }

    fn child_index(&self, p: usize, c: usize) -> usize {
        let slot = self.slot_of(p, c);
        if p > self.a.n {
            slot
        } else {
            self.a.index_of_slot(p, slot)
        }
    }

    fn slot_of(&self, p: usize, c: usize) -> usize {
        if p > self.a.n {
            return self.a.virtual_children().rank1(c);
        }
        self.g
            .child_side(p, self.a.orient)
            .iter()
            .position(|&x| x as usize == c)
            .expect("child appears in its parent's adjacency")
            + 1
    }

    fn child_at_slot(&self, p: usize, slot: usize) -> (usize, usize) {
        if p > self.a.n {
            return (self.a.virtual_children().select1(slot), slot);
        }
        let c = self.g.child_side(p, self.a.orient)[slot - 1] as usize;
        (c, self.a.index_of_slot(p, slot))
    }
}

impl Encode for Orientation {
    fn encode(&self, out: &mut Vec<u8>) {
        put_u8(out, matches!(self, Orientation::Reverse) as u8);
    }
}

impl Decode for Orientation {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        match r.u8()? {
            0 => Ok(Orientation::Forward),
            1 => Ok(Orientation::Reverse),
            t => Err(Error::corrupt(format!("unknown orientation tag {t}"))),
        }
    }
}

impl Encode for TreeArrays {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.n);
        self.orient.encode(out);
        put_usize(out, self.root);
        put_u8(out, self.virtual_root as u8);
        self.d.encode(out);
        self.e.encode(out);
        self.d2.encode(out);
        self.p.encode(out);
        self.dt.encode(out);
        self.no_parent.encode(out);
    }
}

impl Decode for TreeArrays {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        TreeArrays {
            n: r.usize()?,
            orient: Orientation::decode(r)?,
            root: r.usize()?,
            virtual_root: r.bool()?,
            d: BitArray::decode(r)?,
            e: BitArray::decode(r)?,
            d2: Option::<BitArray>::decode(r)?,
            p: BitArray::decode(r)?,
            dt: PlainBitvector::decode(r)?,
            no_parent: Option::<PlainBitvector>::decode(r)?,
        }
        .checked()
    }
}

impl TreeArrays {
    fn checked(self) -> Result<Self> {
        let a = self;
        let dp = a.d_parent();
        let ok = a.d.count_ones() == a.n
            && dp.count_ones() == a.n
            && a.e.len() == a.d.len()
            && a.p.len() == dp.len()
            && a.dt.count_ones() == a.n + 1
            && a.root >= 1
            && a.root <= a.n + a.virtual_root as usize
            && a.no_parent.as_ref().is_none_or(|np| np.len() == a.n)
            && (!a.virtual_root || a.no_parent.is_some());
        if !ok {
            return Err(Error::corrupt("parent/child arrays are inconsistent"));
        }
        Ok(a)
    }

    /// Splits into file sections: a small header, then one per bit array.
    pub fn put_sections(&self, s: &mut Sections) {
        let mut head = Vec::new();
        put_usize(&mut head, self.n);
        self.orient.encode(&mut head);
        put_usize(&mut head, self.root);
        put_u8(&mut head, self.virtual_root as u8);
        s.push_raw(section::TREE, head);
        s.push(section::D, &self.d);
        s.push(section::E, &self.e);
        if let Some(d2) = &self.d2 {
            s.push(section::D2, d2);
        }
        s.push(section::P, &self.p);
        s.push(section::D_T, &self.dt);
        if let Some(np) = &self.no_parent {
            s.push(section::ROOTS, np);
        }
    }

    pub fn from_sections(s: &Sections) -> Result<Self> {
        let head = s.raw(section::TREE).ok_or_else(|| Error::corrupt("missing tree header section"))?;
        let mut r = Reader::new(head);
        let (n, orient, root, virtual_root) = (r.usize()?, Orientation::decode(&mut r)?, r.usize()?, r.bool()?);
        r.finish()?;
        TreeArrays {
            n,
            orient,
            root,
            virtual_root,
            d: s.get(section::D)?,
            e: s.get(section::E)?,
            d2: s.get_opt(section::D2)?,
            p: s.get(section::P)?,
            dt: s.get(section::D_T)?,
            no_parent: s.get_opt(section::ROOTS)?,
        }
        .checked()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexdfs::oracle_dfs;

    const G6: &str = "6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n";

    fn bits(b: &BitArray) -> String {
        (1..=b.len()).map(|i| if b.get(i) { '1' } else { '0' }).collect()
    }

    fn ones(b: &BitArray) -> Vec<usize> {
        (1..=b.count_ones()).map(|j| b.select1(j)).collect()
    }

    #[test]
    fn g6_arrays() {
        let g = AdjacencyGraph::parse(G6).unwrap();
        let r = oracle_dfs(&g, 1).unwrap();
        for compressed in [false, true] {
            let a = TreeArrays::build(&g, Orientation::Forward, &r.tree, false, compressed);
            assert_eq!(bits(a.d()), "100100010010100010");
            assert_eq!(ones(a.e()), [2, 6, 7, 15, 16]);
            assert_eq!(ones(a.p()), [5, 10, 12, 14, 18]);
            assert_eq!(a.dt().iter().map(|b| if b { '1' } else { '0' }).collect::<String>(), "101001110011");
            let t = a.bind(&g);
            assert_eq!(t.parent(3), Some(5));
            assert_eq!(t.parent(6), Some(5));
            assert_eq!(t.parent(1), None);
            assert_eq!(t.num_children(2), 2);
            assert_eq!(t.num_children(4), 0);
            assert_eq!(t.num_children(1), 1);
            assert_eq!((1..=2).map(|j| t.child(5, j)).collect::<Vec<_>>(), [3, 6]);
            assert_eq!(t.child(1, 1), 2);
            assert_eq!(t.child_index(5, 6), 2);
            assert_eq!(t.child_at_slot(5, 3), (6, 2));
        }
    }

    #[test]
    fn directed_and_forest() {
        // 1 -> 2 -> 3, 4 isolated from 1; reverse orientation walks in-lists
        let g = AdjacencyGraph::directed_from_out(vec![vec![2], vec![3], vec![1], vec![3]]).unwrap();
        let r = oracle_dfs(&g, 1).unwrap();
        let a = TreeArrays::build(&g, Orientation::Forward, &r.tree, false, false);
        let t = a.bind(&g);
        assert_eq!(t.parent(3), Some(2));
        assert_eq!(t.child(2, 1), 3);
        assert_eq!(a.components().iter().map(|c| c.0).collect::<Vec<_>>(), ["D1", "E1", "D2", "E2", "D_T", "roots"]);

        let parent = vec![None, None, Some(3), None, None];
        let tree = tree_in_adjacency_order(&g, Orientation::Reverse, 5, &parent, true);
        assert_eq!(tree.children(5), &[1, 3, 4]);
        let a = TreeArrays::build(&g, Orientation::Reverse, &tree, true, false);
        let t = a.bind(&g);
        assert_eq!(t.parent(2), Some(3));
        assert_eq!(t.parent(4), Some(5));
        assert_eq!(t.num_children(5), 3);
        assert_eq!(t.child(5, 2), 3);
        assert_eq!(t.child(3, 1), 2);
        assert_eq!(t.child_index(5, 4), 3);
    }
}
