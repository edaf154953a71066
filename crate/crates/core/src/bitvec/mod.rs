//! Plain and sparse bitvectors with rank/select, plus packed integer arrays.
//!
//! Everything in this module uses 1-based positions and ranks, the
//! convention the index structures are written in.

mod intvec;
mod plain;
mod sparse;

pub use intvec::{bits_for, IntVector};
pub use plain::PlainBitvector;
pub use sparse::SparseBitvector;

use crate::codec::{put_u8, Decode, Encode, Reader};
use crate::error::{Error, Result};

/// A bitvector stored either plainly or Elias-Fano compressed.
///
/// The degree, child and parent arrays switch representation depending on
/// graph density; query code only needs `select1` (and `rank1` on the
/// child array when locating a sibling).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BitArray {
    Plain(PlainBitvector),
    Sparse(SparseBitvector),
}

impl BitArray {
    pub fn build(bits: PlainBitvector, compressed: bool) -> Self {
        if compressed {
            let positions: Vec<usize> = (1..=bits.count_ones()).map(|j| bits.select1(j)).collect();
            BitArray::Sparse(
                SparseBitvector::new(&positions, bits.len()).expect("positions from select are sorted"),
            )
        } else {
            BitArray::Plain(bits)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            BitArray::Plain(b) => b.len(),
            BitArray::Sparse(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count_ones(&self) -> usize {
        match self {
            BitArray::Plain(b) => b.count_ones(),
            BitArray::Sparse(b) => b.count_ones(),
        }
    }

    pub fn is_compressed(&self) -> bool {
        matches!(self, BitArray::Sparse(_))
    }

    #[inline]
    pub fn select1(&self, j: usize) -> usize {
        match self {
            BitArray::Plain(b) => b.select1(j),
            BitArray::Sparse(b) => b.select1(j),
        }
    }

    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        match self {
            BitArray::Plain(b) => b.rank1(i),
            BitArray::Sparse(b) => b.rank1(i),
        }
    }

    pub fn get(&self, i: usize) -> bool {
        match self {
            BitArray::Plain(b) => b.get(i),
            BitArray::Sparse(b) => b.get(i),
        }
    }

    pub fn payload_bits(&self) -> usize {
        match self {
            BitArray::Plain(b) => b.payload_bits(),
            BitArray::Sparse(b) => b.payload_bits(),
        }
    }

    pub fn aux_bits(&self) -> usize {
        match self {
            BitArray::Plain(b) => b.aux_bits(),
            BitArray::Sparse(b) => b.aux_bits(),
        }
    }

    pub fn total_bits(&self) -> usize {
        match self {
            BitArray::Plain(b) => b.total_bits(),
            BitArray::Sparse(b) => b.total_bits(),
        }
    }
}

impl Encode for BitArray {
    fn encode(&self, out: &mut Vec<u8>) {
        match self {
            BitArray::Plain(b) => {
                put_u8(out, 0);
                b.encode(out);
            }
            BitArray::Sparse(b) => {
                put_u8(out, 1);
                b.encode(out);
            }
        }
    }
}

impl Decode for BitArray {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        match r.u8()? {
            0 => Ok(BitArray::Plain(PlainBitvector::decode(r)?)),
            1 => Ok(BitArray::Sparse(SparseBitvector::decode(r)?)),
            t => Err(Error::corrupt(format!("unknown bitvector tag {t}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{from_bytes, to_bytes};
    use proptest::prelude::*;

    fn naive_rank(bits: &[bool], sym: bool, i: usize) -> usize {
        bits[..i].iter().filter(|&&b| b == sym).count()
    }

    fn naive_select(bits: &[bool], sym: bool, j: usize) -> usize {
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b == sym)
            .nth(j - 1)
            .map(|(i, _)| i + 1)
            .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn plain_matches_linear_scan(bits in prop::collection::vec(any::<bool>(), 0..4096), density in 0u8..4) {
            // skew densities so long zero and one runs show up
            let bits: Vec<bool> = bits.iter().enumerate()
                .map(|(i, &b)| match density { 0 => b && i % 5 == 0, 1 => b || i % 3 == 0, _ => b })
                .collect();
            let bv = PlainBitvector::from_bits(bits.iter().copied());
            prop_assert_eq!(bv.rank1(bits.len()) + bv.rank0(bits.len()), bits.len());
            for i in 0..=bits.len() {
                prop_assert_eq!(bv.rank1(i), naive_rank(&bits, true, i));
            }
            for j in 1..=bv.count_ones() {
                prop_assert_eq!(bv.select1(j), naive_select(&bits, true, j));
            }
            for j in 1..=bv.count_zeros() {
                prop_assert_eq!(bv.select0(j), naive_select(&bits, false, j));
            }
            for p in 1..=bits.len() {
                let a = bits[p - 1];
                prop_assert_eq!(bv.select(a, bv.rank(a, p).unwrap()).unwrap(), p);
            }
        }

        #[test]
        fn sparse_round_trip(mut positions in prop::collection::btree_set(1usize..100_000, 0..600), extra in 0usize..5000) {
            let positions: Vec<usize> = std::mem::take(&mut positions).into_iter().collect();
            let universe = positions.last().copied().unwrap_or(0) + extra;
            let s = SparseBitvector::new(&positions, universe).unwrap();
            let decoded: Vec<usize> = (1..=s.count_ones()).map(|j| s.select1(j)).collect();
            prop_assert_eq!(&decoded, &positions);
            for probe in [0, 1, universe / 3, universe / 2, universe] {
                let naive = positions.iter().filter(|&&p| p <= probe).count();
                prop_assert_eq!(s.rank1(probe), naive);
            }
            for &p in positions.iter().take(50) {
                prop_assert_eq!(s.rank1(p), s.rank1(p - 1) + 1);
            }
        }

        #[test]
        fn encoding_round_trips(bits in prop::collection::vec(any::<bool>(), 0..2000), compressed: bool) {
            let arr = BitArray::build(PlainBitvector::from_bits(bits.iter().copied()), compressed);
            let back: BitArray = from_bytes(&to_bytes(&arr)).unwrap();
            prop_assert_eq!(back, arr);
        }
    }

    #[test]
    fn aux_ratio_shrinks_with_length() {
        let ratio = |n: usize| {
            let bv = PlainBitvector::from_bits((0..n).map(|i| (i.wrapping_mul(2654435761)) % 5 < 2));
            bv.aux_bits() as f64 / n as f64
        };
        let r12 = ratio(1 << 12);
        let r16 = ratio(1 << 16);
        let r20 = ratio(1 << 20);
        assert!(r12 >= r16 && r16 >= r20, "{r12} {r16} {r20}");
        assert!(r16 <= 0.5);
    }

    #[test]
    fn representations_agree_on_select() {
        let bits: Vec<bool> = (0..5000).map(|i| i % 13 == 0 || i % 17 == 3).collect();
        let plain = BitArray::build(PlainBitvector::from_bits(bits.iter().copied()), false);
        let sparse = BitArray::build(PlainBitvector::from_bits(bits.iter().copied()), true);
        assert_eq!(plain.count_ones(), sparse.count_ones());
        for j in 1..=plain.count_ones() {
            assert_eq!(plain.select1(j), sparse.select1(j));
        }
        for i in (0..=5000).step_by(7) {
            assert_eq!(plain.rank1(i), sparse.rank1(i));
        }
    }
}
