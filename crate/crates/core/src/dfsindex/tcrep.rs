//! Compact tree-cover representation: the satellite bitvectors and arrays
//! that let any node's minitree, and with it DFIs and subtree sizes, be
//! rebuilt from parent/child navigation alone.

use super::arrays::TreeNav;
use crate::bitvec::{IntVector, PlainBitvector};
use crate::codec::{put_usize, Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::tree::OrderedTree;
use crate::treecover::{LevelAncestor, Skeleton, TreeCover};

/// Per-minitree record, unpacked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinitreeRecord {
    pub root: usize,
    /// Slot identifying the root's first child inside the minitree.
    pub first_child_slot: Option<usize>,
    pub first_child_dfi: Option<usize>,
    /// `(v_c, v_d)`.
    pub out_edge: Option<(usize, usize)>,
    /// Subtree size at `v_c`, 0 without an out-edge.
    pub out_subtree_size: usize,
    pub root_tree_depth: usize,
}

/// A minitree rebuilt from the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstructed {
    pub record: usize,
    pub root: usize,
    /// Nodes in preorder, root first.
    pub nodes: Vec<u32>,
    pub dfi: Vec<u32>,
    /// Depth below the minitree root.
    pub depth: Vec<u32>,
    pub boundary: Option<usize>,
    pub out_subtree_size: usize,
}

impl Reconstructed {
    pub fn position(&self, v: usize) -> Option<usize> {
        self.nodes.iter().position(|&x| x as usize == v)
    }

    pub fn dfi_of(&self, v: usize) -> Option<usize> {
        self.position(v).map(|i| self.dfi[i] as usize)
    }

    /// Size of the full subtree of the node at position `i`.
    pub fn subtree_size_at(&self, i: usize) -> usize {
        let d = self.depth[i];
        let mut size = 0;
        for k in i..self.nodes.len() {
            if k > i && self.depth[k] <= d {
                break;
            }
            size += if Some(self.nodes[k] as usize) == self.boundary { self.out_subtree_size } else { 1 };
        }
        size
    }
}

/// Tree-cover representation of one rooted tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcRep {
    count: usize,
    root: usize,
    size: usize,
    l: usize,
    /// Last root child of each minitree (or a lone root).
    r: PlainBitvector,
    /// Boundaries `v_c`.
    z: PlainBitvector,
    /// Rightmost leaves.
    lrm: PlainBitvector,
    /// Minitree roots.
    a: PlainBitvector,
    rec_root: IntVector,
    rec_first_slot: IntVector,
    rec_first_dfi: IntVector,
    rec_vc: IntVector,
    rec_vd: IntVector,
    rec_out_size: IntVector,
    rec_root_depth: IntVector,
    /// DFI and subtree size of each minitree root, by rank in `a`.
    f_dfi: IntVector,
    f_size: IntVector,
    /// Skeleton node `x` is the `x+1`-th one of `a`; parents stored plus one.
    skel_parent: IntVector,
    ptr_start: IntVector,
    ptrs: IntVector,
    la: LevelAncestor,
    iv_start: IntVector,
    iv_rec: IntVector,
}

fn pack(values: impl IntoIterator<Item = usize>) -> IntVector {
    let v: Vec<u64> = values.into_iter().map(|x| x as u64).collect();
    IntVector::from_slice(&v)
}

impl TcRep {
    /// Covers `tree` with parameter `l`; `nav` supplies the slot numbers
    /// recorded for each minitree's first root child.
    pub fn build(tree: &OrderedTree, l: usize, nav: &impl TreeNav) -> TcRep {
        Self::build_with_cover(tree, l, nav).0
    }

    pub fn build_with_cover(tree: &OrderedTree, l: usize, nav: &impl TreeNav) -> (TcRep, TreeCover) {
        let cover = TreeCover::decompose(tree, l);
        let count = tree.node_count();
        let mts = cover.minitrees();
        // records are ordered by the vertex marked in R
        let mark = |m: &crate::treecover::Minitree| m.last_root_child.unwrap_or(m.root);
        let mut order: Vec<usize> = (0..mts.len()).collect();
        order.sort_by_key(|&i| mark(&mts[i]));
        let mut rec_of = vec![0usize; mts.len()];
        for (j, &i) in order.iter().enumerate() {
            rec_of[i] = j;
        }
        let recs = || order.iter().map(|&i| &mts[i]);
        let r = PlainBitvector::from_ones(count, recs().map(mark));
        let z = PlainBitvector::from_ones(count, {
            let mut b: Vec<usize> = mts.iter().filter_map(|m| m.boundary).collect();
            b.sort_unstable();
            b
        });
        let lrm = PlainBitvector::from_ones(count, {
            let mut b: Vec<usize> = mts.iter().filter(|m| m.len() > 1).map(|m| m.rightmost_leaf).collect();
            b.sort_unstable();
            b
        });
        let roots: Vec<usize> = (1..=count).filter(|&v| cover.is_minitree_root(v)).collect();
        let a = PlainBitvector::from_ones(count, roots.iter().copied());

        let skeleton = Skeleton::build(&cover, tree);
        let la = LevelAncestor::build(skeleton.parents()).expect("skeleton is a tree");
        let mut ptr_start = vec![0usize];
        let mut ptrs = Vec::new();
        for x in 0..skeleton.len() {
            ptrs.extend(skeleton.root_pointers(x).iter().map(|&m| rec_of[m as usize]));
            ptr_start.push(ptrs.len());
        }

        // DFI intervals: each minitree owns the DFIs of its non-root nodes,
        // plus the tree root for the first minitree rooted there
        let mut intervals = Vec::with_capacity(2 * mts.len());
        for (i, m) in mts.iter().enumerate() {
            let j = rec_of[i];
            let last = tree.dfi(m.rightmost_leaf);
            let mut start = match m.first_root_child {
                Some(c) => tree.dfi(c),
                None => tree.dfi(m.root),
            };
            if m.root == tree.root() && cover.rooted_at(m.root)[0] as usize == i {
                start = tree.dfi(m.root);
            }
            match m.boundary {
                Some(c) => {
                    let jump = tree.dfi(c) + tree.subtree_size(c);
                    intervals.push((start, j));
                    if jump <= last {
                        intervals.push((jump, j));
                    }
                }
                None => intervals.push((start, j)),
            }
        }
        intervals.sort_unstable();

        let rep = TcRep {
            count,
            root: tree.root(),
            size: tree.len(),
            l,
            rec_root: pack(recs().map(|m| m.root)),
            rec_first_slot: pack(recs().map(|m| m.first_root_child.map_or(0, |c| nav.slot_of(m.root, c)))),
            rec_first_dfi: pack(recs().map(|m| m.first_root_child.map_or(0, |c| tree.dfi(c)))),
            rec_vc: pack(recs().map(|m| m.boundary.unwrap_or(0))),
            rec_vd: pack(recs().map(|m| m.out_edge(tree).map_or(0, |e| e.1))),
            rec_out_size: pack(recs().map(|m| m.boundary.map_or(0, |c| tree.subtree_size(c)))),
            rec_root_depth: pack(recs().map(|m| tree.depth(m.root))),
            f_dfi: pack(roots.iter().map(|&v| tree.dfi(v))),
            f_size: pack(roots.iter().map(|&v| tree.subtree_size(v))),
            skel_parent: pack(skeleton.parents().iter().map(|&p| p.wrapping_add(1) as usize)),
            ptr_start: pack(ptr_start),
            ptrs: pack(ptrs),
            la,
            iv_start: pack(intervals.iter().map(|iv| iv.0)),
            iv_rec: pack(intervals.iter().map(|iv| iv.1)),
            r,
            z,
            lrm,
            a,
        };
        (rep, cover)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Nodes in the tree.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn record_count(&self) -> usize {
        self.rec_root.len()
    }

    pub fn is_minitree_root(&self, v: usize) -> bool {
        self.a.get(v)
    }

    /// Rank of a minitree root among all roots, 0-based (its skeleton node).
    pub fn root_rank(&self, v: usize) -> usize {
        debug_assert!(self.a.get(v));
        self.a.rank1(v) - 1
    }

    pub fn minitree_roots(&self) -> usize {
        self.a.count_ones()
    }

    pub fn record(&self, j: usize) -> MinitreeRecord {
        let opt = |iv: &IntVector| match iv.get(j) {
            0 => None,
            x => Some(x as usize),
        };
        MinitreeRecord {
            root: self.rec_root.get(j) as usize,
            first_child_slot: opt(&self.rec_first_slot),
            first_child_dfi: opt(&self.rec_first_dfi),
            out_edge: opt(&self.rec_vc).map(|c| (c, self.rec_vd.get(j) as usize)),
            out_subtree_size: self.rec_out_size.get(j) as usize,
            root_tree_depth: self.rec_root_depth.get(j) as usize,
        }
    }

    /// Skeleton parent of skeleton node `x`.
    pub fn skeleton_parent(&self, x: usize) -> Option<usize> {
        (self.skel_parent.get(x) as usize).checked_sub(1)
    }

    pub fn skeleton_vertex(&self, x: usize) -> usize {
        self.a.select1(x + 1)
    }

    /// Ancestor of skeleton node `x` at skeleton depth `level`.
    pub fn skeleton_ancestor(&self, x: usize, level: usize) -> Result<usize> {
        self.la.query(x, level)
    }

    pub fn skeleton_depth(&self, x: usize) -> usize {
        self.la.depth(x)
    }

    fn pointers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let (s, e) = (self.ptr_start.get(x) as usize, self.ptr_start.get(x + 1) as usize);
        (s..e).map(move |k| self.ptrs.get(k) as usize)
    }

    fn root_dfi(&self, v: usize) -> usize {
        self.f_dfi.get(self.root_rank(v)) as usize
    }

    /// Rebuilds the minitree holding `v` as a non-root node: walk forward in
    /// preorder to the minitree's rightmost leaf, climb to the marked last
    /// child of the root, then rerun the minitree from its record.
    pub fn reconstruct(&self, nav: &impl TreeNav, v: usize) -> Result<Reconstructed> {
        if self.a.get(v) {
            return Err(Error::Contract(format!("vertex {v} is a minitree root")));
        }
        let mut x = v;
        while !self.lrm.get(x) {
            x = self.next_in_minitree(nav, x);
        }
        while !self.r.get(x) {
            x = nav.parent(x).expect("the marked root child lies above the leaf");
        }
        Ok(self.reconstruct_record(nav, self.r.rank1(x) - 1))
    }

    fn next_in_minitree(&self, nav: &impl TreeNav, mut x: usize) -> usize {
        if !self.z.get(x) && nav.num_children(x) > 0 {
            return nav.child(x, 1);
        }
        loop {
            let p = nav.parent(x).expect("walk stays inside the minitree");
            let j = nav.child_index(p, x);
            if j < nav.num_children(p) {
                return nav.child(p, j + 1);
            }
            x = p;
        }
    }

    /// Rebuilds minitree `j` from its record alone.
    pub fn reconstruct_record(&self, nav: &impl TreeNav, j: usize) -> Reconstructed {
        let rec = self.record(j);
        let root = rec.root;
        let mut out = Reconstructed {
            record: j,
            root,
            nodes: vec![root as u32],
            dfi: vec![self.root_dfi(root) as u32],
            depth: vec![0],
            boundary: rec.out_edge.map(|e| e.0),
            out_subtree_size: rec.out_subtree_size,
        };
        let Some(slot) = rec.first_child_slot else {
            return out;
        };
        let (_, first) = nav.child_at_slot(root, slot);
        let mut next_dfi = rec.first_child_dfi.unwrap();
        let mut stack: Vec<(usize, u32)> = Vec::new();
        for k in first.. {
            let c = nav.child(root, k);
            stack.push((c, 1));
            while let Some((x, d)) = stack.pop() {
                out.nodes.push(x as u32);
                out.dfi.push(next_dfi as u32);
                out.depth.push(d);
                if self.z.get(x) {
                    next_dfi += rec.out_subtree_size;
                    continue;
                }
                next_dfi += 1;
                for i in (1..=nav.num_children(x)).rev() {
                    stack.push((nav.child(x, i), d + 1));
                }
            }
            if self.r.get(c) {
                break;
            }
        }
        out
    }

    /// DFI and subtree size of `v`.
    pub fn dfi_and_size(&self, nav: &impl TreeNav, v: usize) -> Result<(usize, usize)> {
        if self.a.get(v) {
            let k = self.root_rank(v);
            return Ok((self.f_dfi.get(k) as usize, self.f_size.get(k) as usize));
        }
        let m = self.reconstruct(nav, v)?;
        let i = m.position(v).expect("reconstructed minitree holds the query node");
        Ok((m.dfi[i] as usize, m.subtree_size_at(i)))
    }

    pub fn dfi(&self, nav: &impl TreeNav, v: usize) -> Result<usize> {
        if self.a.get(v) {
            return Ok(self.root_dfi(v));
        }
        let m = self.reconstruct(nav, v)?;
        Ok(m.dfi_of(v).expect("reconstructed minitree holds the query node"))
    }

    pub fn subtree_size(&self, nav: &impl TreeNav, v: usize) -> Result<usize> {
        Ok(self.dfi_and_size(nav, v)?.1)
    }

    /// Record whose DFI interval contains `i`.
    pub fn record_for_dfi(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.size {
            return Err(Error::range("dfi", i, 1, self.size));
        }
        let (mut lo, mut hi) = (0, self.iv_start.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.iv_start.get(mid) as usize <= i {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(self.iv_rec.get(lo) as usize)
    }

    pub fn vertex_at(&self, nav: &impl TreeNav, i: usize) -> Result<usize> {
        let m = self.reconstruct_record(nav, self.record_for_dfi(i)?);
        let k = m
            .dfi
            .iter()
            .position(|&d| d as usize == i)
            .ok_or_else(|| Error::Structure(format!("dfi {i} missing from its minitree")))?;
        Ok(m.nodes[k] as usize)
    }

    /// All nodes in DFI order, by a depth-first walk over the skeleton that
    /// rebuilds each minitree and descends through its boundary.
    pub fn preorder(&self, nav: &impl TreeNav) -> Vec<usize> {
        enum Frame {
            Skel { node: usize, next: usize },
            Mini { m: Reconstructed, pos: usize },
        }
        let mut out = Vec::with_capacity(self.size);
        out.push(self.root);
        let mut stack = vec![Frame::Skel { node: self.root_rank(self.root), next: 0 }];
        while let Some(top) = stack.last_mut() {
            match top {
                Frame::Skel { node, next } => match self.pointers(*node).nth(*next) {
                    Some(rec) => {
                        *next += 1;
                        let m = self.reconstruct_record(nav, rec);
                        stack.push(Frame::Mini { m, pos: 1 });
                    }
                    None => {
                        stack.pop();
                    }
                },
                Frame::Mini { m, pos } => {
                    if *pos == m.nodes.len() {
                        stack.pop();
                        continue;
                    }
                    let x = m.nodes[*pos] as usize;
                    *pos += 1;
                    out.push(x);
                    if Some(x) == m.boundary {
                        stack.push(Frame::Skel { node: self.root_rank(x), next: 0 });
                    }
                }
            }
        }
        out
    }

    /// Named components and their sizes in bits.
    pub fn components(&self) -> Vec<(&'static str, usize)> {
        let recs = [
            &self.rec_root,
            &self.rec_first_slot,
            &self.rec_first_dfi,
            &self.rec_vc,
            &self.rec_vd,
            &self.rec_out_size,
            &self.rec_root_depth,
        ];
        vec![
            ("R", self.r.total_bits()),
            ("C", recs.iter().map(|v| v.bits()).sum()),
            ("Z", self.z.total_bits()),
            ("Lrm", self.lrm.total_bits()),
            ("A", self.a.total_bits()),
            ("F", self.f_dfi.bits() + self.f_size.bits()),
            ("skeleton", self.skel_parent.bits() + self.ptr_start.bits() + self.ptrs.bits()),
            ("LA", self.la.total_bits()),
            ("intervals", self.iv_start.bits() + self.iv_rec.bits()),
        ]
    }

    pub fn total_bits(&self) -> usize {
        self.components().iter().map(|c| c.1).sum()
    }
}

impl Encode for TcRep {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.count);
        put_usize(out, self.root);
        put_usize(out, self.size);
        put_usize(out, self.l);
        for b in [&self.r, &self.z, &self.lrm, &self.a] {
            b.encode(out);
        }
        for v in [
            &self.rec_root,
            &self.rec_first_slot,
            &self.rec_first_dfi,
            &self.rec_vc,
            &self.rec_vd,
            &self.rec_out_size,
            &self.rec_root_depth,
            &self.f_dfi,
            &self.f_size,
            &self.skel_parent,
            &self.ptr_start,
            &self.ptrs,
        ] {
            v.encode(out);
        }
        self.la.encode(out);
        self.iv_start.encode(out);
        self.iv_rec.encode(out);
    }
}

impl Decode for TcRep {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let (count, root, size, l) = (r.usize()?, r.usize()?, r.usize()?, r.usize()?);
        let mut bv = || PlainBitvector::decode(r);
        let (rb, z, lrm, a) = (bv()?, bv()?, bv()?, bv()?);
        let mut iv = || IntVector::decode(r);
        let t = TcRep {
            count,
            root,
            size,
            l,
            r: rb,
            z,
            lrm,
            a,
            rec_root: iv()?,
            rec_first_slot: iv()?,
            rec_first_dfi: iv()?,
            rec_vc: iv()?,
            rec_vd: iv()?,
            rec_out_size: iv()?,
            rec_root_depth: iv()?,
            f_dfi: iv()?,
            f_size: iv()?,
            skel_parent: iv()?,
            ptr_start: iv()?,
            ptrs: iv()?,
            la: LevelAncestor::decode(r)?,
            iv_start: IntVector::decode(r)?,
            iv_rec: IntVector::decode(r)?,
        };
        let recs = t.r.count_ones();
        let roots = t.a.count_ones();
        let ok = [&t.r, &t.z, &t.lrm, &t.a].iter().all(|b| b.len() == count)
            && root >= 1
            && root <= count
            && t.a.get(root)
            && [&t.rec_root, &t.rec_first_slot, &t.rec_first_dfi, &t.rec_vc, &t.rec_vd, &t.rec_out_size, &t.rec_root_depth]
                .iter()
                .all(|v| v.len() == recs)
            && t.f_dfi.len() == roots
            && t.f_size.len() == roots
            && t.skel_parent.len() == roots
            && t.la.len() == roots
            && t.ptr_start.len() == roots + 1
            && t.iv_start.len() == t.iv_rec.len()
            && !t.iv_start.is_empty()
            && t.rec_root.iter().all(|v| v >= 1 && (v as usize) <= count && t.a.get(v as usize))
            && t.iv_rec.iter().all(|j| (j as usize) < recs)
            && t.ptrs.iter().all(|j| (j as usize) < recs);
        if !ok {
            return Err(Error::corrupt("tree cover representation is inconsistent"));
        }
        Ok(t)
    }
}
