use crate::codec::{put_u32, put_u64s, put_usize, Decode, Encode, Reader};
use crate::error::{Error, Result};

/// Fixed-width packed integer array.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntVector {
    len: usize,
    width: u32,
    words: Vec<u64>,
}

/// Bits needed to store `v` (at least 1).
pub fn bits_for(v: u64) -> u32 {
    (64 - v.leading_zeros()).max(1)
}

impl IntVector {
    pub fn new(len: usize, width: u32) -> Self {
        assert!((1..=64).contains(&width));
        IntVector {
            len,
            width,
            words: vec![0; (len * width as usize).div_ceil(64)],
        }
    }

    /// Packs `values` with the smallest width that holds the maximum.
    pub fn from_slice(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::from_slice_with_width(values, bits_for(max))
    }

    pub fn from_slice_with_width(values: &[u64], width: u32) -> Self {
        let mut iv = IntVector::new(values.len(), width);
        for (i, &v) in values.iter().enumerate() {
            iv.set(i, v);
        }
        iv
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        let w = self.width as usize;
        let bit = i * w;
        let (wi, off) = (bit / 64, bit % 64);
        let mask = if w == 64 { !0 } else { (1u64 << w) - 1 };
        let lo = self.words[wi] >> off;
        if off + w <= 64 {
            lo & mask
        } else {
            (lo | (self.words[wi + 1] << (64 - off))) & mask
        }
    }

    pub fn set(&mut self, i: usize, v: u64) {
        assert!(i < self.len);
        let w = self.width as usize;
        let mask = if w == 64 { !0 } else { (1u64 << w) - 1 };
        assert!(v & !mask == 0, "value {v} does not fit in {w} bits");
        let bit = i * w;
        let (wi, off) = (bit / 64, bit % 64);
        self.words[wi] = (self.words[wi] & !(mask << off)) | (v << off);
        if off + w > 64 {
            let hi_bits = off + w - 64;
            let hi_mask = (1u64 << hi_bits) - 1;
            self.words[wi + 1] = (self.words[wi + 1] & !hi_mask) | (v >> (64 - off));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Payload bits, `len * width`.
    pub fn bits(&self) -> usize {
        self.len * self.width as usize
    }
}

impl Encode for IntVector {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.len);
        put_u32(out, self.width);
        put_u64s(out, &self.words);
    }
}

impl Decode for IntVector {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let width = r.u32()?;
        let words = r.u64s()?;
        if !(1..=64).contains(&width)
            || len.checked_mul(width as usize).map(|b| b.div_ceil(64)) != Some(words.len())
        {
            return Err(Error::corrupt("packed integer array has inconsistent size"));
        }
        Ok(IntVector { len, width, words })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straddles_word_boundaries() {
        let vals: Vec<u64> = (0..200).map(|i| (i * 2654435761u64) % 8191).collect();
        let iv = IntVector::from_slice(&vals);
        assert_eq!(iv.width(), 13);
        assert_eq!(iv.to_vec(), vals);
    }

    #[test]
    fn full_width() {
        let vals = vec![u64::MAX, 0, 12345];
        let iv = IntVector::from_slice(&vals);
        assert_eq!(iv.width(), 64);
        assert_eq!(iv.to_vec(), vals);
    }
}
