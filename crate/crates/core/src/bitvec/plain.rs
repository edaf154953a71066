use crate::codec::{put_u32s, put_u64s, put_usize, Decode, Encode, Reader};
use crate::error::{Error, Result};

const WORD_BITS: usize = 64;
const SUPERBLOCK_WORDS: usize = 8;
const SUPERBLOCK_BITS: usize = WORD_BITS * SUPERBLOCK_WORDS;
/// One select hint is kept for every this many occurrences of a symbol.
const SELECT_SAMPLE: usize = 4096;

/// Static bitvector with constant-probe rank and select.
///
/// Directory layout: for every 512-bit superblock two words are stored, the
/// absolute number of ones before the superblock and seven 9-bit counts of
/// ones before words 1..7 inside it. Select keeps the superblock index of
/// every 4096-th one (and zero) and finishes with a search over the
/// superblocks between two hints.
///
/// Positions in the public API are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlainBitvector {
    len: usize,
    ones: usize,
    words: Vec<u64>,
    dir: Vec<u64>,
    hints1: Vec<u32>,
    hints0: Vec<u32>,
}

impl PlainBitvector {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0usize;
        for b in bits {
            if len.is_multiple_of(WORD_BITS) {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// Builds from LSB-first words; bits past `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        if !len.is_multiple_of(WORD_BITS) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % WORD_BITS)) - 1;
        }
        let mut bv = PlainBitvector {
            len,
            ones: 0,
            words,
            dir: Vec::new(),
            hints1: Vec::new(),
            hints0: Vec::new(),
        };
        bv.build_directories();
        bv
    }

    /// Builds a `len`-bit vector with ones at the given 1-based positions.
    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut words = vec![0u64; len.div_ceil(WORD_BITS)];
        for p in ones {
            assert!(p >= 1 && p <= len, "position {p} outside 1..={len}");
            words[(p - 1) / WORD_BITS] |= 1 << ((p - 1) % WORD_BITS);
        }
        Self::from_words(words, len)
    }

    /// Parses a string of '0'/'1' characters; other characters are ignored.
    pub fn from_str_bits(s: &str) -> Self {
        Self::from_bits(s.chars().filter_map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        }))
    }

    fn build_directories(&mut self) {
        let n_super = self.words.len().div_ceil(SUPERBLOCK_WORDS);
        let mut dir = Vec::with_capacity(2 * n_super + 2);
        let mut total = 0u64;
        for sb in 0..n_super {
            dir.push(total);
            let mut rel = 0u64;
            let mut packed = 0u64;
            for w in 0..SUPERBLOCK_WORDS {
                let idx = sb * SUPERBLOCK_WORDS + w;
                if w > 0 {
                    packed |= rel << (9 * (w - 1));
                }
                if idx < self.words.len() {
                    rel += self.words[idx].count_ones() as u64;
                }
            }
            dir.push(packed);
            total += rel;
        }
        dir.push(total);
        dir.push(0);
        self.ones = total as usize;
        self.dir = dir;

        let mut hints1 = Vec::new();
        let mut hints0 = Vec::new();
        for sb in 0..n_super {
            let ones_before = self.dir[2 * sb] as usize;
            let zeros_before = sb * SUPERBLOCK_BITS - ones_before;
            let ones_end = self.dir[2 * sb + 2] as usize;
            let bits_end = ((sb + 1) * SUPERBLOCK_BITS).min(self.len);
            let zeros_end = bits_end - ones_end;
            // superblock sb holds ones with 0-based ranks [ones_before, ones_end)
            while hints1.len() * SELECT_SAMPLE < ones_end
                && hints1.len() * SELECT_SAMPLE >= ones_before
            {
                hints1.push(sb as u32);
            }
            while hints0.len() * SELECT_SAMPLE < zeros_end
                && hints0.len() * SELECT_SAMPLE >= zeros_before
            {
                hints0.push(sb as u32);
            }
        }
        self.hints1 = hints1;
        self.hints0 = hints0;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        let p = i - 1;
        (self.words[p / WORD_BITS] >> (p % WORD_BITS)) & 1 == 1
    }

    pub fn try_get(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.len {
            return Err(Error::range("bit position", i, 1, self.len));
        }
        Ok(self.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.get(i))
    }

    #[inline]
    fn rel_count(&self, sb: usize, w: usize) -> u64 {
        if w == 0 {
            0
        } else {
            (self.dir[2 * sb + 1] >> (9 * (w - 1))) & 0x1FF
        }
    }

    /// Ones among the first `p` bits (0-based exclusive prefix).
    #[inline]
    pub(crate) fn rank1_prefix(&self, p: usize) -> usize {
        if p >= self.len {
            return self.ones;
        }
        let wi = p / WORD_BITS;
        let sb = wi / SUPERBLOCK_WORDS;
        let base = self.dir[2 * sb] + self.rel_count(sb, wi % SUPERBLOCK_WORDS);
        let bit = p % WORD_BITS;
        let masked = if bit == 0 { 0 } else { self.words[wi] << (WORD_BITS - bit) };
        base as usize + masked.count_ones() as usize
    }

    /// Number of ones in positions `1..=i`; `i = 0` yields 0.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        self.rank1_prefix(i)
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn rank(&self, symbol: bool, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::range("rank position", i, 0, self.len));
        }
        Ok(if symbol { self.rank1(i) } else { self.rank0(i) })
    }

    pub fn select(&self, symbol: bool, j: usize) -> Result<usize> {
        let total = if symbol { self.ones } else { self.count_zeros() };
        if j == 0 || j > total {
            return Err(Error::range("select rank", j, 1, total));
        }
        Ok(if symbol { self.select1(j) } else { self.select0(j) })
    }

    /// Position of the `j`-th one (1-based). Panics in debug builds when
    /// `j` is out of range; use [`select`](Self::select) for a checked call.
    #[inline]
    pub fn select1(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.ones, "select1({j}) with {} ones", self.ones);
        self.select1_0(j - 1) + 1
    }

    #[inline]
    pub fn select0(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.count_zeros());
        self.select0_0(j - 1) + 1
    }

    /// 0-based position of the one with 0-based rank `k`.
    #[inline]
    pub(crate) fn select1_0(&self, k: usize) -> usize {
        let h = k / SELECT_SAMPLE;
        let mut lo = self.hints1[h] as usize;
        let mut hi = match self.hints1.get(h + 1) {
            Some(&s) => s as usize,
            None => self.words.len().div_ceil(SUPERBLOCK_WORDS) - 1,
        };
        // largest superblock in [lo, hi] whose count before it is <= k
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.dir[2 * mid] as usize <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let sb = lo;
        let mut rem = (k - self.dir[2 * sb] as usize) as u64;
        let mut w = 0;
        while w + 1 < SUPERBLOCK_WORDS
            && sb * SUPERBLOCK_WORDS + w + 1 < self.words.len()
            && self.rel_count(sb, w + 1) <= rem
        {
            w += 1;
        }
        rem -= self.rel_count(sb, w);
        let wi = sb * SUPERBLOCK_WORDS + w;
        wi * WORD_BITS + select_in_word(self.words[wi], rem as u32) as usize
    }

    #[inline]
    pub(crate) fn select0_0(&self, k: usize) -> usize {
        let zeros_before = |sb: usize| sb * SUPERBLOCK_BITS - self.dir[2 * sb] as usize;
        let h = k / SELECT_SAMPLE;
        let mut lo = self.hints0[h] as usize;
        let mut hi = match self.hints0.get(h + 1) {
            Some(&s) => s as usize,
            None => self.words.len().div_ceil(SUPERBLOCK_WORDS) - 1,
        };
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if zeros_before(mid) <= k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let sb = lo;
        let mut rem = (k - zeros_before(sb)) as u64;
        let rel0 = |w: usize| (w * WORD_BITS) as u64 - self.rel_count(sb, w);
        let mut w = 0;
        while w + 1 < SUPERBLOCK_WORDS
            && sb * SUPERBLOCK_WORDS + w + 1 < self.words.len()
            && rel0(w + 1) <= rem
        {
            w += 1;
        }
        rem -= rel0(w);
        let wi = sb * SUPERBLOCK_WORDS + w;
        wi * WORD_BITS + select_in_word(!self.words[wi], rem as u32) as usize
    }

    /// Smallest 1-based position `q >= i` holding a one, if any.
    pub fn next_one(&self, i: usize) -> Option<usize> {
        if i == 0 || i > self.len {
            return None;
        }
        let p = i - 1;
        let mut wi = p / WORD_BITS;
        let mut w = self.words[wi] & (!0u64 << (p % WORD_BITS));
        loop {
            if w != 0 {
                let q = wi * WORD_BITS + w.trailing_zeros() as usize;
                return (q < self.len).then_some(q + 1);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    /// Payload bits (the bit sequence itself).
    pub fn payload_bits(&self) -> usize {
        self.len
    }

    /// Bits used by the rank directory and select hints.
    pub fn aux_bits(&self) -> usize {
        self.dir.len() * 64 + (self.hints1.len() + self.hints0.len()) * 32
    }

    /// Payload rounded up to whole words plus directories.
    pub fn total_bits(&self) -> usize {
        self.words.len() * 64 + self.aux_bits()
    }
}

/// Position (0-based) of the `k`-th (0-based) set bit in `w`.
#[inline]
pub(crate) fn select_in_word(mut w: u64, mut k: u32) -> u32 {
    let mut off = 0;
    loop {
        let c = (w & 0xFF).count_ones();
        if k < c {
            break;
        }
        k -= c;
        w >>= 8;
        off += 8;
    }
    for _ in 0..k {
        w &= w - 1;
    }
    off + w.trailing_zeros()
}

impl Encode for PlainBitvector {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.len);
        put_u64s(out, &self.words);
        put_u64s(out, &self.dir);
        put_u32s(out, &self.hints1);
        put_u32s(out, &self.hints0);
    }
}

impl Decode for PlainBitvector {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let words = r.u64s()?;
        let dir = r.u64s()?;
        let hints1 = r.u32s()?;
        let hints0 = r.u32s()?;
        if words.len() != len.div_ceil(WORD_BITS) {
            return Err(Error::corrupt("bitvector payload length mismatch"));
        }
        let rebuilt = PlainBitvector::from_words(words, len);
        if rebuilt.dir != dir || rebuilt.hints1 != hints1 || rebuilt.hints0 != hints0 {
            return Err(Error::corrupt("bitvector directory does not match payload"));
        }
        Ok(rebuilt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_select(bits: &[bool], sym: bool, j: usize) -> Option<usize> {
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b == sym)
            .nth(j - 1)
            .map(|(i, _)| i + 1)
    }

    #[test]
    fn empty() {
        let bv = PlainBitvector::from_bits(std::iter::empty());
        assert_eq!(bv.len(), 0);
        assert_eq!(bv.rank1(0), 0);
        assert!(bv.select(true, 1).is_err());
    }

    #[test]
    fn small_examples() {
        let bv = PlainBitvector::from_str_bits("111111");
        assert_eq!(bv.rank1(6), 6);
        assert_eq!(bv.select1(6), 6);

        let bv = PlainBitvector::from_str_bits("101100");
        assert_eq!(bv.select1(2), 3);
        assert_eq!(bv.rank1(4), 3);
        assert_eq!(bv.select1(3), 4);
        assert_eq!(bv.rank1(0), 0);

        assert_eq!(PlainBitvector::from_str_bits("000").rank(false, 3).unwrap(), 3);
        assert_eq!(PlainBitvector::from_str_bits("1").select1(1), 1);
        assert_eq!(PlainBitvector::from_str_bits("0011").select0(2), 2);
    }

    #[test]
    fn range_errors() {
        let bv = PlainBitvector::from_str_bits("0110");
        assert!(matches!(bv.rank(true, 5), Err(Error::OutOfRange { .. })));
        assert!(matches!(bv.select(true, 3), Err(Error::OutOfRange { .. })));
        assert!(matches!(bv.select(false, 0), Err(Error::OutOfRange { .. })));
        assert!(bv.try_get(0).is_err());
    }

    #[test]
    fn long_runs_cross_hints() {
        // sparse ones far apart force the superblock search between hints
        let n = 300_000;
        let bits: Vec<bool> = (0..n).map(|i| i % 37 == 0 || i > 250_000).collect();
        let bv = PlainBitvector::from_bits(bits.iter().copied());
        let mut ones = 0;
        let mut zeros = 0;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                ones += 1;
                assert_eq!(bv.select1(ones), i + 1);
            } else {
                zeros += 1;
                assert_eq!(bv.select0(zeros), i + 1);
            }
            if i % 101 == 0 {
                assert_eq!(bv.rank1(i + 1), ones);
            }
        }
        assert_eq!(naive_select(&bits, true, 5), Some(bv.select1(5)));
    }

    #[test]
    fn next_one_scans_words() {
        let bv = PlainBitvector::from_str_bits(&format!("1{}1{}", "0".repeat(130), "0".repeat(5)));
        assert_eq!(bv.next_one(1), Some(1));
        assert_eq!(bv.next_one(2), Some(132));
        assert_eq!(bv.next_one(133), None);
    }

    #[test]
    fn aux_overhead_is_bounded() {
        let n = 1 << 16;
        let bv = PlainBitvector::from_bits((0..n).map(|i| (i * 7919) % 3 == 0));
        assert!(bv.aux_bits() as f64 <= 0.5 * n as f64);
    }
}
