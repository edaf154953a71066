//! Balanced-parentheses ordered tree with a range min-max directory.
//!
//! Node `k` (1-based preorder rank) is the `k`-th open parenthesis. With
//! `E(i)` the excess after the first `i + 1` parentheses (0-based `i`), a
//! node opening at `p` has depth `E(p) - 1`, closes at the first `j > p` with
//! `E(j) = E(p) - 1`, and its children close exactly where the excess returns
//! to `E(p)` inside that span.

use crate::bitvec::PlainBitvector;
use crate::codec::{Decode, Encode, Reader};
use crate::error::{Error, Result};
use crate::tree::OrderedTree;

const BLOCK: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct MinCount {
    min: i64,
    count: u64,
}

impl MinCount {
    const EMPTY: MinCount = MinCount { min: i64::MAX, count: 0 };

    fn merge(self, o: MinCount) -> MinCount {
        match self.min.cmp(&o.min) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => o,
            std::cmp::Ordering::Equal => MinCount { min: self.min, count: self.count + o.count },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpTree {
    bits: PlainBitvector,
    /// Segment tree over blocks; leaf `b` at `leaves + b`. Minima are
    /// absolute excess values, stored as `u32` since excess is never negative.
    seg_min: Vec<u32>,
    seg_count: Vec<u32>,
    leaves: usize,
}

impl BpTree {
    pub fn from_tree(tree: &OrderedTree) -> BpTree {
        let mut bits = Vec::with_capacity(2 * tree.len());
        let mut stack = vec![(tree.root(), false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                bits.push(false);
                continue;
            }
            bits.push(true);
            stack.push((v, true));
            for &c in tree.children(v).iter().rev() {
                stack.push((c as usize, false));
            }
        }
        Self::from_parens(PlainBitvector::from_bits(bits)).expect("emitted sequence is balanced")
    }

    pub fn from_parens(bits: PlainBitvector) -> Result<BpTree> {
        let len = bits.len();
        if len == 0 || len % 2 == 1 {
            return Err(Error::Structure("parentheses must be a nonempty even-length sequence".into()));
        }
        let blocks = len.div_ceil(BLOCK);
        let leaves = blocks.next_power_of_two();
        let mut seg = vec![MinCount::EMPTY; 2 * leaves];
        let mut e: i64 = 0;
        for b in 0..blocks {
            let mut mc = MinCount::EMPTY;
            for i in b * BLOCK..((b + 1) * BLOCK).min(len) {
                e += if bits.get(i + 1) { 1 } else { -1 };
                if e < 0 || (e == 0 && i + 1 != len) {
                    return Err(Error::Structure("parentheses are not a single balanced tree".into()));
                }
                mc = mc.merge(MinCount { min: e, count: 1 });
            }
            seg[leaves + b] = mc;
        }
        if e != 0 {
            return Err(Error::Structure("parentheses are unbalanced".into()));
        }
        for x in (1..leaves).rev() {
            seg[x] = seg[2 * x].merge(seg[2 * x + 1]);
        }
        Ok(BpTree {
            bits,
            seg_min: seg.iter().map(|m| if m.count == 0 { u32::MAX } else { m.min as u32 }).collect(),
            seg_count: seg.iter().map(|m| m.count as u32).collect(),
            leaves,
        })
    }

    pub fn parens(&self) -> &PlainBitvector {
        &self.bits
    }

    pub fn parens_string(&self) -> String {
        self.bits.iter().map(|b| if b { '(' } else { ')' }).collect()
    }

    pub fn node_count(&self) -> usize {
        self.bits.len() / 2
    }

    fn seg(&self, x: usize) -> MinCount {
        match self.seg_count[x] {
            0 => MinCount::EMPTY,
            c => MinCount { min: self.seg_min[x] as i64, count: c as u64 },
        }
    }

    #[inline]
    fn is_open(&self, i: usize) -> bool {
        self.bits.words()[i / 64] >> (i % 64) & 1 == 1
    }

    /// Excess after positions `0..=i`; `excess(-1)` is 0.
    #[inline]
    fn excess(&self, i: isize) -> i64 {
        if i < 0 {
            return 0;
        }
        let i = i as usize;
        2 * self.bits.rank1(i + 1) as i64 - (i as i64 + 1)
    }

    fn block_range(&self, b: usize) -> (usize, usize) {
        (b * BLOCK, ((b + 1) * BLOCK).min(self.bits.len()))
    }

    /// Smallest `j > i` with `E(j) <= target`.
    fn fwd_below(&self, i: usize, target: i64) -> Option<usize> {
        let len = self.bits.len();
        let mut e = self.excess(i as isize);
        let b = i / BLOCK;
        let (_, end) = self.block_range(b);
        for j in i + 1..end {
            e += if self.is_open(j) { 1 } else { -1 };
            if e <= target {
                return Some(j);
            }
        }
        // next block to the right whose minimum reaches the target
        let mut x = self.leaves + b;
        loop {
            if x == 1 {
                return None;
            }
            if x.is_multiple_of(2) && self.seg(x + 1).min <= target {
                x += 1;
                break;
            }
            x /= 2;
        }
        while x < self.leaves {
            x = if self.seg(2 * x).min <= target { 2 * x } else { 2 * x + 1 };
        }
        let (start, end) = self.block_range(x - self.leaves);
        let mut e = self.excess(start as isize - 1);
        for j in start..end.min(len) {
            e += if self.is_open(j) { 1 } else { -1 };
            if e <= target {
                return Some(j);
            }
        }
        unreachable!("block minimum promised a hit")
    }

    /// Largest `j < i` with `E(j) <= target`, where `j = -1` (excess 0) always
    /// qualifies for `target >= 0`.
    fn bwd_below(&self, i: usize, target: i64) -> isize {
        let b = i / BLOCK;
        let (start, _) = self.block_range(b);
        let mut e = self.excess(i as isize - 1);
        let mut j = i as isize - 1;
        while j >= start as isize {
            if e <= target {
                return j;
            }
            e -= if self.is_open(j as usize) { 1 } else { -1 };
            j -= 1;
        }
        if e <= target {
            return j;
        }
        let mut x = self.leaves + b;
        loop {
            if x == 1 {
                return -1;
            }
            if x % 2 == 1 && self.seg(x - 1).min <= target {
                x -= 1;
                break;
            }
            x /= 2;
        }
        while x < self.leaves {
            x = if self.seg(2 * x + 1).min <= target { 2 * x + 1 } else { 2 * x };
        }
        let (start, end) = self.block_range(x - self.leaves);
        let mut e = self.excess(end as isize - 1);
        let mut j = end as isize - 1;
        while j >= start as isize {
            if e <= target {
                return j;
            }
            e -= if self.is_open(j as usize) { 1 } else { -1 };
            j -= 1;
        }
        unreachable!("block minimum promised a hit")
    }

    /// Minimum and its multiplicity over `E(l..=r)`.
    fn range_min(&self, l: usize, r: usize) -> MinCount {
        let mut acc = MinCount::EMPTY;
        let (bl, br) = (l / BLOCK, r / BLOCK);
        let scan = |from: usize, to: usize, acc: &mut MinCount| {
            let mut e = self.excess(from as isize - 1);
            for j in from..=to {
                e += if self.is_open(j) { 1 } else { -1 };
                *acc = acc.merge(MinCount { min: e, count: 1 });
            }
        };
        if bl == br {
            scan(l, r, &mut acc);
            return acc;
        }
        scan(l, self.block_range(bl).1 - 1, &mut acc);
        let (mut lo, mut hi) = (self.leaves + bl + 1, self.leaves + br);
        while lo < hi {
            if lo % 2 == 1 {
                acc = acc.merge(self.seg(lo));
                lo += 1;
            }
            if hi % 2 == 1 {
                hi -= 1;
                acc = acc.merge(self.seg(hi));
            }
            lo /= 2;
            hi /= 2;
        }
        scan(self.block_range(br).0, r, &mut acc);
        acc
    }

    /// `k`-th position (1-based) in `l..=r` where `E` equals `target`, the
    /// range minimum.
    fn range_select_min(&self, l: usize, r: usize, target: i64, mut k: u64) -> usize {
        let scan = |from: usize, to: usize, k: &mut u64| -> Option<usize> {
            let mut e = self.excess(from as isize - 1);
            for j in from..=to {
                e += if self.is_open(j) { 1 } else { -1 };
                if e == target {
                    *k -= 1;
                    if *k == 0 {
                        return Some(j);
                    }
                }
            }
            None
        };
        let (bl, br) = (l / BLOCK, r / BLOCK);
        if bl == br {
            return scan(l, r, &mut k).expect("enough minima in range");
        }
        if let Some(j) = scan(l, self.block_range(bl).1 - 1, &mut k) {
            return j;
        }
        // whole blocks bl+1..br, left to right
        let mut nodes_left = Vec::new();
        let mut nodes_right = Vec::new();
        let (mut lo, mut hi) = (self.leaves + bl + 1, self.leaves + br);
        while lo < hi {
            if lo % 2 == 1 {
                nodes_left.push(lo);
                lo += 1;
            }
            if hi % 2 == 1 {
                hi -= 1;
                nodes_right.push(hi);
            }
            lo /= 2;
            hi /= 2;
        }
        nodes_left.extend(nodes_right.into_iter().rev());
        for mut x in nodes_left {
            let s = self.seg(x);
            let hits = if s.min == target { s.count } else { 0 };
            if hits < k {
                k -= hits;
                continue;
            }
            while x < self.leaves {
                let left = self.seg(2 * x);
                let lh = if left.min == target { left.count } else { 0 };
                if lh >= k {
                    x *= 2;
                } else {
                    k -= lh;
                    x = 2 * x + 1;
                }
            }
            let (s, e) = self.block_range(x - self.leaves);
            return scan(s, e - 1, &mut k).expect("block count promised a hit");
        }
        scan(self.block_range(br).0, r, &mut k).expect("enough minima in range")
    }

    fn check(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.node_count() {
            return Err(Error::range("node", k, 1, self.node_count()));
        }
        Ok(())
    }

    /// Open position (0-based) of preorder node `k`.
    #[inline]
    pub fn select_pre(&self, k: usize) -> Result<usize> {
        self.check(k)?;
        Ok(self.bits.select1(k) - 1)
    }

    #[inline]
    fn rank_pre(&self, p: usize) -> usize {
        self.bits.rank1(p + 1)
    }

    fn close(&self, p: usize) -> usize {
        self.fwd_below(p, self.excess(p as isize) - 1).expect("every open parenthesis closes")
    }

    pub fn depth(&self, k: usize) -> Result<usize> {
        let p = self.select_pre(k)?;
        Ok(self.excess(p as isize) as usize - 1)
    }

    pub fn subtree_size(&self, k: usize) -> Result<usize> {
        let p = self.select_pre(k)?;
        Ok((self.close(p) - p).div_ceil(2))
    }

    pub fn degree(&self, k: usize) -> Result<usize> {
        let p = self.select_pre(k)?;
        let c = self.close(p);
        if c == p + 1 {
            return Ok(0);
        }
        let mc = self.range_min(p + 1, c - 1);
        debug_assert_eq!(mc.min, self.excess(p as isize));
        Ok(mc.count as usize)
    }

    /// `i`-th child (1-based) of node `k`, as a preorder rank.
    pub fn child(&self, k: usize, i: usize) -> Result<usize> {
        let deg = self.degree(k)?;
        if i == 0 || i > deg {
            return Err(Error::range("child index", i, 1, deg));
        }
        let p = self.select_pre(k)?;
        if i == 1 {
            return Ok(k + 1);
        }
        let c = self.close(p);
        let prev_close = self.range_select_min(p + 1, c - 1, self.excess(p as isize), (i - 1) as u64);
        Ok(self.rank_pre(prev_close + 1))
    }

    /// Ancestor of `k` at depth `level`.
    pub fn level_anc(&self, k: usize, level: usize) -> Result<usize> {
        let d = self.depth(k)?;
        if level > d {
            return Err(Error::range("level", level, 0, d));
        }
        let p = self.select_pre(k)?;
        let j = self.bwd_below(p, level as i64);
        Ok(self.rank_pre((j + 1) as usize))
    }

    pub fn parent(&self, k: usize) -> Result<Option<usize>> {
        let d = self.depth(k)?;
        if d == 0 {
            return Ok(None);
        }
        self.level_anc(k, d - 1).map(Some)
    }

    pub fn payload_bits(&self) -> usize {
        self.bits.payload_bits()
    }

    /// Rank/select and min-max directories.
    pub fn aux_bits(&self) -> usize {
        self.bits.aux_bits() + 64 * self.seg_min.len()
    }

    pub fn total_bits(&self) -> usize {
        self.payload_bits() + self.aux_bits()
    }
}

impl Encode for BpTree {
    fn encode(&self, out: &mut Vec<u8>) {
        self.bits.encode(out);
    }
}

impl Decode for BpTree {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let bits = PlainBitvector::decode(r)?;
        BpTree::from_parens(bits).map_err(Error::corrupt)
    }
}
