use crate::bitvec::{IntVector, PlainBitvector};
use crate::codec::{put_usize, Decode, Encode, Reader};
use crate::error::{Error, Result};

/// Permutation of `1..=n` with O(1) forward and O(t) inverse evaluation.
///
/// Cycles longer than `t` mark every `t`-th element; a marked `y` keeps a
/// back pointer to `π^{-t}(y)`. Inverting `j` walks forward to the next mark
/// (fewer than `t` steps), jumps back `t` steps and walks forward again to the
/// predecessor of `j`, for at most `t` forward reads plus one back pointer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortcutPermutation {
    t: usize,
    forward: IntVector,
    marks: PlainBitvector,
    back: IntVector,
}

/// `⌈1/ε⌉` for `0 < ε <= 1`.
pub fn step_for(epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::input(format!("epsilon {epsilon} outside (0, 1]")));
    }
    Ok((1.0 / epsilon - 1e-9).ceil().max(1.0) as usize)
}

impl ShortcutPermutation {
    /// `pi[i - 1]` is the image of `i`.
    pub fn build(pi: &[usize], epsilon: f64) -> Result<Self> {
        let t = step_for(epsilon)?;
        let n = pi.len();
        let mut seen = vec![false; n + 1];
        for &v in pi {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::input(format!("not a permutation of 1..={n} (value {v})")));
            }
        }
        let mut marked = vec![false; n + 1];
        let mut back_of = vec![0usize; n + 1];
        let mut visited = vec![false; n + 1];
        let mut cycle = Vec::new();
        for start in 1..=n {
            if visited[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x);
                x = pi[x - 1];
            }
            let len = cycle.len();
            if len > t {
                for k in (0..len).step_by(t) {
                    marked[cycle[k]] = true;
                    back_of[cycle[k]] = cycle[(k + len - t) % len];
                }
            }
        }
        let back: Vec<u64> = (1..=n).filter(|&v| marked[v]).map(|v| back_of[v] as u64).collect();
        Ok(ShortcutPermutation {
            t,
            forward: IntVector::from_slice(&pi.iter().map(|&v| v as u64).collect::<Vec<_>>()),
            marks: PlainBitvector::from_bits(marked[1..].iter().copied()),
            back: IntVector::from_slice(&back),
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn step(&self) -> usize {
        self.t
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::range("permutation argument", i, 1, self.len()));
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.forward.get(i - 1) as usize)
    }

    pub fn inverse(&self, j: usize) -> Result<usize> {
        Ok(self.inverse_counted(j)?.0)
    }

    /// Preimage of `j` and the number of array reads spent.
    pub fn inverse_counted(&self, j: usize) -> Result<(usize, usize)> {
        self.check(j)?;
        let mut reads = 0;
        let mut x = j;
        let mut jumped = false;
        loop {
            if !jumped && self.marks.get(x) {
                x = self.back.get(self.marks.rank1(x) - 1) as usize;
                reads += 1;
                jumped = true;
            }
            let y = self.forward.get(x - 1) as usize;
            reads += 1;
            if y == j {
                return Ok((x, reads));
            }
            x = y;
        }
    }

    pub fn total_bits(&self) -> usize {
        self.forward.bits() + self.marks.total_bits() + self.back.bits()
    }

    /// `(forward, marks, back)` bits.
    pub fn components(&self) -> [(&'static str, usize); 3] {
        [
            ("perm_forward", self.forward.bits()),
            ("perm_marks", self.marks.total_bits()),
            ("perm_back", self.back.bits()),
        ]
    }
}

impl Encode for ShortcutPermutation {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.t);
        self.forward.encode(out);
        self.marks.encode(out);
        self.back.encode(out);
    }
}

impl Decode for ShortcutPermutation {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let t = r.usize()?;
        let forward = IntVector::decode(r)?;
        let marks = PlainBitvector::decode(r)?;
        let back = IntVector::decode(r)?;
        let n = forward.len();
        let mut seen = vec![false; n + 1];
        let bijective = forward.iter().all(|v| v >= 1 && v as usize <= n && !std::mem::replace(&mut seen[v as usize], true));
        if t == 0 || !bijective || marks.len() != n || back.len() != marks.count_ones() || back.iter().any(|v| v == 0 || v as usize > n) {
            return Err(Error::corrupt("permutation arrays are inconsistent"));
        }
        Ok(ShortcutPermutation { t, forward, marks, back })
    }
}
