//! Tree covering: splits a rooted ordered tree into minitrees of at most
//! `2L` nodes that overlap only at their roots.
//!
//! Shape of the cover built here:
//!
//! * the minitrees rooted at a node `r` each take a contiguous run of `r`'s
//!   children, so a minitree is identified by its root's first and last
//!   child inside it;
//! * a minitree leaves through at most one non-root node `v_c`, its
//!   boundary. A boundary has no children inside its minitree; all of its
//!   children lie in minitrees rooted at the boundary itself;
//! * every node except the tree root is a non-root member of exactly one
//!   minitree.

mod la;
mod skeleton;

pub use la::LevelAncestor;
pub use skeleton::Skeleton;

use crate::tree::OrderedTree;

/// Default minitree size parameter: `ceil(lg n)`, at least 1.
pub fn default_l(n: usize) -> usize {
    (n.max(1).next_power_of_two().trailing_zeros() as usize).max(1)
}

/// One minitree of a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minitree {
    pub root: usize,
    /// Nodes in preorder, root first.
    pub nodes: Vec<u32>,
    pub first_root_child: Option<usize>,
    pub last_root_child: Option<usize>,
    /// The non-root node whose subtree continues outside (`v_c`).
    pub boundary: Option<usize>,
    /// Last node of the minitree in preorder.
    pub rightmost_leaf: usize,
}

impl Minitree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(v_c, v_d)`: the boundary and the first node below it, which lies in
    /// a minitree rooted at the boundary.
    pub fn out_edge(&self, tree: &OrderedTree) -> Option<(usize, usize)> {
        self.boundary.map(|c| (c, tree.children(c)[0] as usize))
    }
}

/// A complete cover of one tree.
#[derive(Clone, Debug)]
pub struct TreeCover {
    l: usize,
    minitrees: Vec<Minitree>,
    /// Minitree holding `v` as a non-root member, plus one; 0 for the root.
    owner: Vec<u32>,
    /// Minitrees rooted at `v`, left to right.
    rooted_at: Vec<Vec<u32>>,
}

impl TreeCover {
    /// Bottom-up greedy decomposition.
    ///
    /// Each node hands its parent an open component (itself plus the open
    /// parts of some descendants) of fewer than `L` nodes containing at most
    /// one boundary. When a node's children bring too much, or bring two
    /// boundaries, the node closes: its children's components are packed
    /// left to right into minitrees rooted at it, and it becomes a boundary
    /// of the component it hands up.
    pub fn decompose(tree: &OrderedTree, l: usize) -> TreeCover {
        assert!(l >= 1);
        let count = tree.node_count();
        let mut open_size = vec![0u32; count + 1];
        let mut carries_boundary = vec![false; count + 1];
        let mut closed = vec![false; count + 1];
        let mut cover = TreeCover {
            l,
            minitrees: Vec::new(),
            owner: vec![0; count + 1],
            rooted_at: vec![Vec::new(); count + 1],
        };
        for &v in tree.order().iter().rev() {
            let v = v as usize;
            let kids = tree.children(v);
            let total: usize = 1 + kids.iter().map(|&c| open_size[c as usize] as usize).sum::<usize>();
            let bounds = kids.iter().filter(|&&c| carries_boundary[c as usize]).count();
            let is_root = v == tree.root();
            if kids.is_empty() && !is_root {
                open_size[v] = 1;
            } else if !is_root && total < l && bounds <= 1 {
                open_size[v] = total as u32;
                carries_boundary[v] = bounds == 1;
            } else {
                cover.close(tree, v, &open_size, &carries_boundary, &closed);
                closed[v] = true;
                open_size[v] = 1;
                carries_boundary[v] = true;
            }
        }
        cover
    }

    /// Packs the open components of `v`'s children into minitrees rooted at `v`.
    fn close(&mut self, tree: &OrderedTree, v: usize, size: &[u32], bnd: &[bool], closed: &[bool]) {
        let kids = tree.children(v);
        if kids.is_empty() {
            self.emit(tree, v, &[], closed);
            return;
        }
        let cap = 2 * self.l - 1;
        let mut start = 0;
        let (mut cur, mut cur_b) = (0usize, false);
        for (i, &c) in kids.iter().enumerate() {
            let (s, b) = (size[c as usize] as usize, bnd[c as usize]);
            if i > start && (cur + s > cap || (cur_b && b)) {
                self.emit(tree, v, &kids[start..i], closed);
                start = i;
                cur = 0;
                cur_b = false;
            }
            cur += s;
            cur_b |= b;
        }
        self.emit(tree, v, &kids[start..], closed);
    }

    fn emit(&mut self, tree: &OrderedTree, root: usize, group: &[u32], closed: &[bool]) {
        let id = self.minitrees.len();
        let mut nodes = vec![root as u32];
        let mut boundary = None;
        let mut stack: Vec<u32> = group.iter().rev().copied().collect();
        while let Some(x) = stack.pop() {
            let x = x as usize;
            nodes.push(x as u32);
            self.owner[x] = id as u32 + 1;
            if closed[x] {
                boundary = Some(x);
            } else {
                stack.extend(tree.children(x).iter().rev());
            }
        }
        self.rooted_at[root].push(id as u32);
        self.minitrees.push(Minitree {
            root,
            rightmost_leaf: *nodes.last().unwrap() as usize,
            nodes,
            first_root_child: group.first().map(|&c| c as usize),
            last_root_child: group.last().map(|&c| c as usize),
            boundary,
        });
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn minitrees(&self) -> &[Minitree] {
        &self.minitrees
    }

    pub fn len(&self) -> usize {
        self.minitrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minitrees.is_empty()
    }

    /// Minitree containing `v` as a non-root member.
    pub fn owner(&self, v: usize) -> Option<usize> {
        match self.owner[v] {
            0 => None,
            k => Some(k as usize - 1),
        }
    }

    /// Minitrees rooted at `v`, left to right.
    pub fn rooted_at(&self, v: usize) -> &[u32] {
        &self.rooted_at[v]
    }

    pub fn is_minitree_root(&self, v: usize) -> bool {
        !self.rooted_at[v].is_empty()
    }

    /// Checks every cover invariant against `tree`; returns the violations.
    pub fn violations(&self, tree: &OrderedTree) -> Vec<String> {
        let mut out = Vec::new();
        let n = tree.len();
        let count = tree.node_count();
        if self.len() * self.l > 8 * n.max(1) {
            out.push(format!("{} minitrees exceed 8n/L = {}", self.len(), 8 * n / self.l));
        }
        let mut member = vec![u32::MAX; count + 1];
        let mut covered = vec![false; count + 1];
        for (id, m) in self.minitrees.iter().enumerate() {
            if m.len() > 2 * self.l {
                out.push(format!("minitree {id} has {} > 2L nodes", m.len()));
            }
            if m.nodes[0] as usize != m.root {
                out.push(format!("minitree {id} does not start at its root"));
            }
            covered[m.root] = true;
            for &x in &m.nodes[1..] {
                let x = x as usize;
                if member[x] != u32::MAX {
                    out.push(format!("node {x} is a non-root member of two minitrees"));
                }
                member[x] = id as u32;
                covered[x] = true;
            }
        }
        for (id, m) in self.minitrees.iter().enumerate() {
            let inside = |x: usize| x == m.root || member[x] == id as u32;
            let mut leaving = 0;
            for &x in &m.nodes[1..] {
                let x = x as usize;
                let p = tree.parent(x).unwrap();
                if !inside(p) {
                    out.push(format!("minitree {id} is disconnected at node {x}"));
                }
                if tree.children(x).iter().any(|&c| !inside(c as usize)) {
                    leaving += 1;
                    if Some(x) != m.boundary {
                        out.push(format!("minitree {id}: node {x} leaves but is not the boundary"));
                    }
                }
            }
            if leaving > 1 {
                out.push(format!("minitree {id} has {leaving} non-root out-edges"));
            }
            let root_kids: Vec<usize> = tree
                .children(m.root)
                .iter()
                .map(|&c| c as usize)
                .filter(|&c| member[c] == id as u32)
                .collect();
            if let (Some(f), Some(l)) = (root_kids.first(), root_kids.last()) {
                let all = tree.children(m.root);
                let a = all.iter().position(|&c| c as usize == *f).unwrap();
                let b = all.iter().position(|&c| c as usize == *l).unwrap();
                if b - a + 1 != root_kids.len() {
                    out.push(format!("minitree {id}: root children are not contiguous"));
                }
                if m.first_root_child != Some(*f) || m.last_root_child != Some(*l) {
                    out.push(format!("minitree {id}: first/last root child fields are wrong"));
                }
            } else if m.len() != 1 {
                out.push(format!("minitree {id} has nodes but no root children"));
            }
            if Some(&(m.rightmost_leaf as u32)) != m.nodes.iter().max_by_key(|&&x| tree.dfi(x as usize)) {
                out.push(format!("minitree {id}: wrong rightmost leaf"));
            }
        }
        for &v in tree.order() {
            if !covered[v as usize] {
                out.push(format!("node {v} is not covered"));
            }
        }
        out
    }
}
