use super::intvec::IntVector;
use super::plain::PlainBitvector;
use crate::codec::{put_u32, put_usize, Decode, Encode, Reader};
use crate::error::{Error, Result};

/// Elias-Fano encoded bitvector for few ones in a long universe.
///
/// Every set position `p` (1-based) is stored as `p - 1` split into a low
/// half of `low_width` bits, kept verbatim, and a high half, kept in unary in
/// `high`. `low_width = floor(lg(universe / ones))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBitvector {
    universe: usize,
    ones: usize,
    low_width: u32,
    high: PlainBitvector,
    low: Option<IntVector>,
}

impl SparseBitvector {
    /// Builds from strictly increasing 1-based positions, each `<= universe`.
    pub fn new(positions: &[usize], universe: usize) -> Result<Self> {
        for (k, &p) in positions.iter().enumerate() {
            if p == 0 || p > universe {
                return Err(Error::input(format!(
                    "set position {p} outside universe 1..={universe}"
                )));
            }
            if k > 0 && positions[k - 1] >= p {
                return Err(Error::input("set positions must be strictly increasing"));
            }
        }
        let ones = positions.len();
        let low_width = if ones == 0 || universe <= ones {
            0
        } else {
            (universe / ones).ilog2()
        };
        let high_len = if universe == 0 {
            ones
        } else {
            ones + ((universe - 1) >> low_width) + 1
        };
        let mut words = vec![0u64; high_len.div_ceil(64)];
        let mut lows = Vec::with_capacity(if low_width > 0 { ones } else { 0 });
        let mask = (1u64 << low_width) - 1;
        for (k, &p) in positions.iter().enumerate() {
            let v = (p - 1) as u64;
            let bit = (v >> low_width) as usize + k;
            words[bit / 64] |= 1 << (bit % 64);
            if low_width > 0 {
                lows.push(v & mask);
            }
        }
        let low = (low_width > 0).then(|| IntVector::from_slice_with_width(&lows, low_width));
        Ok(SparseBitvector {
            universe,
            ones,
            low_width,
            high: PlainBitvector::from_words(words, high_len),
            low,
        })
    }

    /// Builds from a plain bit sequence.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut positions = Vec::new();
        let mut universe = 0;
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                positions.push(i + 1);
            }
            universe = i + 1;
        }
        Self::new(&positions, universe).expect("positions derived from bits are valid")
    }

    pub fn len(&self) -> usize {
        self.universe
    }

    pub fn is_empty(&self) -> bool {
        self.universe == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn low_width(&self) -> u32 {
        self.low_width
    }

    #[inline]
    fn low_part(&self, k: usize) -> u64 {
        match &self.low {
            Some(l) => l.get(k),
            None => 0,
        }
    }

    /// Position of the `j`-th set bit (1-based); unchecked in release builds.
    #[inline]
    pub fn select1(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.ones);
        let k = j - 1;
        let hi = (self.high.select1_0(k) - k) as u64;
        ((hi << self.low_width) | self.low_part(k)) as usize + 1
    }

    pub fn try_select1(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.ones {
            return Err(Error::range("select rank", j, 1, self.ones));
        }
        Ok(self.select1(j))
    }

    /// Number of set positions `<= i`.
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.universe);
        if i == 0 || self.ones == 0 {
            return 0;
        }
        if i >= self.universe {
            return self.ones;
        }
        // count stored values (p - 1) strictly below i
        let x = i as u64;
        let hb = (x >> self.low_width) as usize;
        let low_x = x & ((1u64 << self.low_width) - 1);
        let mut pos = if hb == 0 { 0 } else { self.high.select0_0(hb - 1) + 1 };
        let mut count = pos - hb;
        while pos < self.high.len() && self.high.get(pos + 1) && self.low_part(count) < low_x {
            pos += 1;
            count += 1;
        }
        count
    }

    pub fn try_rank1(&self, i: usize) -> Result<usize> {
        if i > self.universe {
            return Err(Error::range("rank position", i, 0, self.universe));
        }
        Ok(self.rank1(i))
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> bool {
        let r = self.rank1(i);
        r > 0 && self.select1(r) == i
    }

    /// Bits of the unary and fixed-width halves.
    pub fn payload_bits(&self) -> usize {
        self.high.payload_bits() + self.low.as_ref().map_or(0, |l| l.bits())
    }

    pub fn aux_bits(&self) -> usize {
        self.high.aux_bits()
    }

    pub fn total_bits(&self) -> usize {
        self.payload_bits() + self.aux_bits()
    }
}

impl Encode for SparseBitvector {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.universe);
        put_usize(out, self.ones);
        put_u32(out, self.low_width);
        self.high.encode(out);
        self.low.encode(out);
    }
}

impl Decode for SparseBitvector {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let universe = r.usize()?;
        let ones = r.usize()?;
        let low_width = r.u32()?;
        let high = PlainBitvector::decode(r)?;
        let low = Option::<IntVector>::decode(r)?;
        let consistent = high.count_ones() == ones
            && low_width < 64
            && match &low {
                Some(l) => l.len() == ones && l.width() == low_width,
                None => low_width == 0,
            };
        if !consistent {
            return Err(Error::corrupt("sparse bitvector parts are inconsistent"));
        }
        Ok(SparseBitvector {
            universe,
            ones,
            low_width,
            high,
            low,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = SparseBitvector::new(&[], 10).unwrap();
        assert_eq!(s.count_ones(), 0);
        assert_eq!(s.rank1(10), 0);

        let s = SparseBitvector::new(&[3, 7, 8], 12).unwrap();
        assert_eq!(s.select1(2), 7);
        assert_eq!(s.select1(3), 8);
        assert_eq!(s.rank1(7), 2);
        assert_eq!(s.rank1(0), 0);
        assert_eq!(s.rank1(12), 3);

        assert_eq!(SparseBitvector::new(&[5], 5).unwrap().select1(1), 5);

        let n = 40;
        let dense: Vec<usize> = (1..=n).collect();
        let s = SparseBitvector::new(&dense, n).unwrap();
        assert!((1..=n).all(|i| s.select1(i) == i));

        let evens: Vec<usize> = (1..=25).map(|i| 2 * i).collect();
        let s = SparseBitvector::new(&evens, 60).unwrap();
        assert!((1..=25).all(|i| s.select1(i) == 2 * i));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SparseBitvector::new(&[3, 3], 5).is_err());
        assert!(SparseBitvector::new(&[4, 2], 5).is_err());
        assert!(SparseBitvector::new(&[6], 5).is_err());
        assert!(SparseBitvector::new(&[0], 5).is_err());
        let s = SparseBitvector::new(&[1], 5).unwrap();
        assert!(s.try_select1(2).is_err());
        assert!(s.try_rank1(6).is_err());
    }

    #[test]
    fn storage_envelope() {
        let universe = 1 << 20;
        let positions: Vec<usize> = (1..=1000).map(|i| i * 1000 + (i % 7)).collect();
        let s = SparseBitvector::new(&positions, universe).unwrap();
        let m = positions.len();
        let ceil_lg = ((universe as f64) / m as f64).log2().ceil() as usize;
        assert!(s.total_bits() <= m * ceil_lg + 3 * m + 2048);
    }
}
