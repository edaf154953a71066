//! Explicit rooted ordered trees with preorder numbering.
//!
//! Node ids are `1..=node_count`; ids outside the tree (unreached vertices)
//! simply have no parent, no children and DFI 0.

/// A rooted ordered tree stored with pointers, plus derived preorder data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedTree {
    root: usize,
    parent: Vec<u32>,
    children: Vec<Vec<u32>>,
    order: Vec<u32>,
    dfi: Vec<u32>,
    size: Vec<u32>,
    depth: Vec<u32>,
}

impl OrderedTree {
    /// Builds from per-node child lists (`children[v]`, index 0 unused).
    pub fn from_children(root: usize, children: Vec<Vec<u32>>) -> Self {
        let count = children.len() - 1;
        assert!(root >= 1 && root <= count, "root {root} outside 1..={count}");
        let mut parent = vec![0u32; count + 1];
        for (p, kids) in children.iter().enumerate() {
            for &c in kids {
                parent[c as usize] = p as u32;
            }
        }
        let mut order = Vec::new();
        let mut dfi = vec![0u32; count + 1];
        let mut depth = vec![0u32; count + 1];
        let mut stack = vec![root as u32];
        while let Some(v) = stack.pop() {
            let v = v as usize;
            order.push(v as u32);
            dfi[v] = order.len() as u32;
            for &c in children[v].iter().rev() {
                depth[c as usize] = depth[v] + 1;
                stack.push(c);
            }
        }
        let mut size = vec![0u32; count + 1];
        for &v in order.iter().rev() {
            let v = v as usize;
            size[v] += 1;
            if v != root {
                let p = parent[v] as usize;
                size[p] += size[v];
            }
        }
        OrderedTree { root, parent, children, order, dfi, size, depth }
    }

    /// Builds from a parent array; children keep ascending id order.
    pub fn from_parents(root: usize, parent: &[Option<usize>]) -> Self {
        let mut children = vec![Vec::new(); parent.len()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v as u32);
            }
        }
        Self::from_children(root, children)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Largest node id, including nodes outside the tree.
    pub fn node_count(&self) -> usize {
        self.parent.len() - 1
    }

    /// Nodes actually in the tree.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v < self.dfi.len() && self.dfi[v] != 0
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            0 => None,
            p => Some(p as usize),
        }
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.children[v]
    }

    /// Nodes in preorder.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// 1-based preorder rank, 0 when `v` is not in the tree.
    pub fn dfi(&self, v: usize) -> usize {
        self.dfi[v] as usize
    }

    pub fn node_at(&self, i: usize) -> usize {
        self.order[i - 1] as usize
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.size[v] as usize
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    /// Proper-ancestor test by preorder interval.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        u != v && self.dfi(u) <= self.dfi(v) && self.dfi(v) < self.dfi(u) + self.subtree_size(u)
    }

    /// Balanced-parentheses string of the tree, `(` on entry and `)` on exit.
    pub fn parens(&self) -> String {
        let mut s = String::with_capacity(2 * self.len());
        let mut stack = vec![(self.root, 0usize)];
        s.push('(');
        while let Some((v, k)) = stack.last_mut() {
            if let Some(&c) = self.children[*v].get(*k) {
                *k += 1;
                s.push('(');
                stack.push((c as usize, 0));
            } else {
                s.push(')');
                stack.pop();
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_data() {
        // 1 -> 2 -> {4, 5 -> {3, 6}}
        let mut ch = vec![Vec::new(); 7];
        ch[1] = vec![2];
        ch[2] = vec![4, 5];
        ch[5] = vec![3, 6];
        let t = OrderedTree::from_children(1, ch);
        assert_eq!(t.order(), &[1, 2, 4, 5, 3, 6]);
        assert_eq!(t.subtree_size(2), 5);
        assert_eq!(t.depth(6), 3);
        assert_eq!(t.parens(), "((()(()())))");
        assert!(t.is_ancestor(2, 6));
        assert!(!t.is_ancestor(6, 2));
        assert!(!t.is_ancestor(3, 3));
    }

    #[test]
    fn partial_trees() {
        let t = OrderedTree::from_parents(2, &[None, None, None, Some(2)]);
        assert_eq!(t.len(), 2);
        assert!(!t.contains(1));
        assert_eq!(t.dfi(3), 2);
    }
}
