use super::TreeCover;
use crate::tree::OrderedTree;

/// Tree over the distinct minitree roots.
///
/// Skeleton nodes are numbered `0..len()` by ascending root vertex id; the
/// parent of a root `x` is the root of the minitree holding `x` as its
/// boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    roots: Vec<u32>,
    parent: Vec<u32>,
    children: Vec<Vec<u32>>,
    skel_depth: Vec<u32>,
    tree_depth: Vec<u32>,
    /// Minitree ids sharing each root, left to right.
    root_pointers: Vec<Vec<u32>>,
}

pub const NO_PARENT: u32 = u32::MAX;

impl Skeleton {
    pub fn build(cover: &TreeCover, tree: &OrderedTree) -> Skeleton {
        let roots: Vec<u32> = (1..=tree.node_count() as u32)
            .filter(|&v| cover.is_minitree_root(v as usize))
            .collect();
        let mut index = std::collections::HashMap::with_capacity(roots.len());
        for (i, &r) in roots.iter().enumerate() {
            index.insert(r, i as u32);
        }
        let k = roots.len();
        let mut parent = vec![NO_PARENT; k];
        let mut children = vec![Vec::new(); k];
        let mut skel_depth = vec![0u32; k];
        for &r in tree.order() {
            let Some(&i) = index.get(&r) else { continue };
            if let Some(owner) = cover.owner(r as usize) {
                let p = index[&(cover.minitrees()[owner].root as u32)];
                parent[i as usize] = p;
                children[p as usize].push(i);
                skel_depth[i as usize] = skel_depth[p as usize] + 1;
            }
        }
        Skeleton {
            tree_depth: roots.iter().map(|&r| tree.depth(r as usize) as u32).collect(),
            root_pointers: roots.iter().map(|&r| cover.rooted_at(r as usize).to_vec()).collect(),
            roots,
            parent,
            children,
            skel_depth,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root_vertex(&self, x: usize) -> usize {
        self.roots[x] as usize
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        (self.parent[x] != NO_PARENT).then(|| self.parent[x] as usize)
    }

    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    pub fn children(&self, x: usize) -> &[u32] {
        &self.children[x]
    }

    pub fn skel_depth(&self, x: usize) -> usize {
        self.skel_depth[x] as usize
    }

    pub fn tree_depth(&self, x: usize) -> usize {
        self.tree_depth[x] as usize
    }

    pub fn root_pointers(&self, x: usize) -> &[u32] {
        &self.root_pointers[x]
    }
}
