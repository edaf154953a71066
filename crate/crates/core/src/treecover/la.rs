use crate::bitvec::IntVector;
use crate::codec::{Decode, Encode, Reader};
use crate::error::{Error, Result};

/// Level ancestor by ladders and jump pointers.
///
/// The tree is split into longest paths; each path of `h` nodes is stored
/// as a ladder extended by up to `h` ancestors above its top. Leaves keep
/// jump pointers at power-of-two distances and every node knows the leaf
/// that ends its path. A query is one jump from that leaf followed by one
/// ladder lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAncestor {
    depth: IntVector,
    /// Ladder id and index within it for every node.
    ladder_of: IntVector,
    ladder_pos: IntVector,
    ladder_start: IntVector,
    ladders: IntVector,
    /// Leaf ending each node's longest path.
    leaf_of: IntVector,
    /// Jump pointers of leaf `f` occupy `jumps[jump_start[r]..jump_start[r+1]]`
    /// where `r` is `f`'s rank among leaves (0 for inner nodes).
    leaf_rank: IntVector,
    jump_start: IntVector,
    jumps: IntVector,
}

fn pack(v: &[u32]) -> IntVector {
    IntVector::from_slice(&v.iter().map(|&x| x as u64).collect::<Vec<_>>())
}

impl LevelAncestor {
    /// Builds from a parent array (`u32::MAX` marks the root).
    pub fn build(parent: &[u32]) -> Result<Self> {
        let k = parent.len();
        let mut children = vec![Vec::new(); k];
        let mut root = None;
        for (x, &p) in parent.iter().enumerate() {
            if p == u32::MAX {
                if root.replace(x).is_some() {
                    return Err(Error::Structure("level ancestor input has two roots".into()));
                }
            } else if (p as usize) < k {
                children[p as usize].push(x as u32);
            } else {
                return Err(Error::Structure(format!("parent {p} out of range")));
            }
        }
        let Some(root) = root else {
            return Err(Error::Structure("level ancestor input has no root".into()));
        };
        let mut order = Vec::with_capacity(k);
        let mut depth = vec![0u32; k];
        let mut stack = vec![root as u32];
        while let Some(x) = stack.pop() {
            order.push(x);
            for &c in &children[x as usize] {
                depth[c as usize] = depth[x as usize] + 1;
                stack.push(c);
            }
        }
        if order.len() != k {
            return Err(Error::Structure("level ancestor input is not a tree".into()));
        }
        // height and the child continuing the longest path
        let mut height = vec![1u32; k];
        let mut heavy = vec![u32::MAX; k];
        for &x in order.iter().rev() {
            for &c in &children[x as usize] {
                if height[c as usize] + 1 > height[x as usize] {
                    height[x as usize] = height[c as usize] + 1;
                    heavy[x as usize] = c;
                }
            }
        }
        let mut ladder_of = vec![0u32; k];
        let mut ladder_pos = vec![0u32; k];
        let mut ladder_start = vec![0u32];
        let mut ladders = Vec::new();
        let mut leaf_of = vec![0u32; k];
        for &top in &order {
            let top = top as usize;
            if top != root && heavy[parent[top] as usize] == top as u32 {
                continue;
            }
            let mut path = vec![top as u32];
            while heavy[*path.last().unwrap() as usize] != u32::MAX {
                let next = heavy[*path.last().unwrap() as usize];
                path.push(next);
            }
            let mut ext = Vec::new();
            let mut a = top;
            while ext.len() < path.len() && parent[a] != u32::MAX {
                a = parent[a] as usize;
                ext.push(a as u32);
            }
            ext.reverse();
            let id = ladder_start.len() as u32 - 1;
            let leaf = *path.last().unwrap();
            for (i, &x) in path.iter().enumerate() {
                ladder_of[x as usize] = id;
                ladder_pos[x as usize] = (ext.len() + i) as u32;
                leaf_of[x as usize] = leaf;
            }
            ladders.extend(ext);
            ladders.extend(path);
            ladder_start.push(ladders.len() as u32);
        }
        // binary lifting table, kept only for the leaves
        let mut lift = vec![parent.to_vec()];
        while lift.last().unwrap().iter().any(|&p| p != u32::MAX) {
            let prev = lift.last().unwrap();
            lift.push(prev.iter().map(|&p| if p == u32::MAX { p } else { prev[p as usize] }).collect());
        }
        let mut leaf_rank = vec![0u32; k];
        let mut jump_start = vec![0u32];
        let mut jumps = Vec::new();
        for &x in &order {
            if !children[x as usize].is_empty() {
                continue;
            }
            leaf_rank[x as usize] = jump_start.len() as u32 - 1;
            jumps.extend(lift.iter().map(|l| l[x as usize]).take_while(|&a| a != u32::MAX));
            jump_start.push(jumps.len() as u32);
        }
        Ok(LevelAncestor {
            depth: pack(&depth),
            ladder_of: pack(&ladder_of),
            ladder_pos: pack(&ladder_pos),
            ladder_start: pack(&ladder_start),
            ladders: pack(&ladders),
            leaf_of: pack(&leaf_of),
            leaf_rank: pack(&leaf_rank),
            jump_start: pack(&jump_start),
            jumps: pack(&jumps),
        })
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth.get(x) as usize
    }

    /// Ancestor of `x` at depth `level`.
    pub fn query(&self, x: usize, level: usize) -> Result<usize> {
        let dx = self.depth(x);
        if level > dx {
            return Err(Error::range("level", level, 0, dx));
        }
        if level == dx {
            return Ok(x);
        }
        if let Some(a) = self.on_ladder(x, dx - level) {
            return Ok(a);
        }
        let f = self.leaf_of.get(x) as usize;
        let dist = self.depth(f) - level;
        let i = dist.ilog2() as usize;
        let r = self.leaf_rank.get(f) as usize;
        let y = self.jumps.get(self.jump_start.get(r) as usize + i) as usize;
        Ok(self.on_ladder(y, dist - (1 << i)).expect("ladder covers the remaining distance"))
    }

    fn on_ladder(&self, x: usize, up: usize) -> Option<usize> {
        let pos = self.ladder_pos.get(x) as usize;
        (up <= pos).then(|| {
            let base = self.ladder_start.get(self.ladder_of.get(x) as usize) as usize;
            self.ladders.get(base + pos - up) as usize
        })
    }

    fn parts(&self) -> [&IntVector; 9] {
        [
            &self.depth,
            &self.ladder_of,
            &self.ladder_pos,
            &self.ladder_start,
            &self.ladders,
            &self.leaf_of,
            &self.leaf_rank,
            &self.jump_start,
            &self.jumps,
        ]
    }

    pub fn total_bits(&self) -> usize {
        self.parts().iter().map(|p| p.bits()).sum()
    }
}

impl Encode for LevelAncestor {
    fn encode(&self, out: &mut Vec<u8>) {
        for p in self.parts() {
            p.encode(out);
        }
    }
}

impl Decode for LevelAncestor {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let la = LevelAncestor {
            depth: IntVector::decode(r)?,
            ladder_of: IntVector::decode(r)?,
            ladder_pos: IntVector::decode(r)?,
            ladder_start: IntVector::decode(r)?,
            ladders: IntVector::decode(r)?,
            leaf_of: IntVector::decode(r)?,
            leaf_rank: IntVector::decode(r)?,
            jump_start: IntVector::decode(r)?,
            jumps: IntVector::decode(r)?,
        };
        let k = la.depth.len() as u64;
        let last = |v: &IntVector| (!v.is_empty()).then(|| v.get(v.len() - 1) as usize);
        let ok = [la.ladder_of.len(), la.ladder_pos.len(), la.leaf_of.len(), la.leaf_rank.len()]
            .iter()
            .all(|&l| l as u64 == k)
            && last(&la.ladder_start) == Some(la.ladders.len())
            && last(&la.jump_start) == Some(la.jumps.len())
            && la.ladders.iter().chain(la.jumps.iter()).chain(la.leaf_of.iter()).all(|x| x < k);
        if !ok {
            return Err(Error::corrupt("level ancestor arrays are inconsistent"));
        }
        Ok(la)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn walk_up(parent: &[u32], mut x: usize, up: usize) -> usize {
        for _ in 0..up {
            x = parent[x] as usize;
        }
        x
    }

    #[test]
    fn small_cases() {
        let la = LevelAncestor::build(&[u32::MAX]).unwrap();
        assert_eq!(la.query(0, 0).unwrap(), 0);
        let la = LevelAncestor::build(&[u32::MAX, 0, 1]).unwrap();
        assert_eq!(la.query(2, 1).unwrap(), 1);
        assert_eq!(la.query(2, 0).unwrap(), 0);
        assert!(la.query(1, 2).is_err());
        assert!(LevelAncestor::build(&[u32::MAX, u32::MAX]).is_err());
        assert!(LevelAncestor::build(&[1, 0]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn matches_walk_up(k in 1usize..1024, seed: u64, bushy: bool) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let parent: Vec<u32> = (0..k)
                .map(|x| match x {
                    0 => u32::MAX,
                    x if bushy => rng.gen_range(0..x) as u32,
                    x => (x - 1 - rng.gen_range(0..x.min(3))) as u32,
                })
                .collect();
            let la = LevelAncestor::build(&parent).unwrap();
            for x in 0..k {
                let d = la.depth(x);
                for level in 0..=d {
                    prop_assert_eq!(la.query(x, level).unwrap(), walk_up(&parent, x, d - level));
                }
            }
        }
    }
}
