//! Little-endian binary encoding shared by every serialized structure.

use crate::error::{Error, Result};

/// Types that can be written into an index file section.
pub trait Encode {
    fn encode(&self, out: &mut Vec<u8>);
}

/// Types that can be read back from an index file section.
pub trait Decode: Sized {
    fn decode(r: &mut Reader<'_>) -> Result<Self>;
}

pub fn put_u8(out: &mut Vec<u8>, v: u8) {
    out.push(v);
}

pub fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub fn put_usize(out: &mut Vec<u8>, v: usize) {
    put_u64(out, v as u64);
}

pub fn put_u64s(out: &mut Vec<u8>, vs: &[u64]) {
    put_usize(out, vs.len());
    out.reserve(vs.len() * 8);
    for &v in vs {
        put_u64(out, v);
    }
}

pub fn put_u32s(out: &mut Vec<u8>, vs: &[u32]) {
    put_usize(out, vs.len());
    out.reserve(vs.len() * 4);
    for &v in vs {
        put_u32(out, v);
    }
}

/// Cursor over a byte slice; every read is bounds-checked and reports
/// truncation as file corruption.
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::corrupt(format!(
                "unexpected end of data at byte {} (wanted {n} more)",
                self.pos
            )));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn usize(&mut self) -> Result<usize> {
        let v = self.u64()?;
        usize::try_from(v).map_err(|_| Error::corrupt("length does not fit in usize"))
    }

    /// Reads a length prefix, refusing counts that cannot fit in the rest of
    /// the buffer.
    pub fn len_prefix(&mut self, elem_bytes: usize) -> Result<usize> {
        let n = self.usize()?;
        if n.checked_mul(elem_bytes).is_none_or(|b| b > self.remaining()) {
            return Err(Error::corrupt(format!("length prefix {n} exceeds data")));
        }
        Ok(n)
    }

    pub fn u64s(&mut self) -> Result<Vec<u64>> {
        let n = self.len_prefix(8)?;
        (0..n).map(|_| self.u64()).collect()
    }

    pub fn u32s(&mut self) -> Result<Vec<u32>> {
        let n = self.len_prefix(4)?;
        (0..n).map(|_| self.u32()).collect()
    }

    pub fn bool(&mut self) -> Result<bool> {
        match self.u8()? {
            0 => Ok(false),
            1 => Ok(true),
            b => Err(Error::corrupt(format!("invalid boolean byte {b}"))),
        }
    }

    pub fn finish(&self) -> Result<()> {
        if self.remaining() != 0 {
            return Err(Error::corrupt(format!("{} trailing bytes", self.remaining())));
        }
        Ok(())
    }
}

impl<T: Encode> Encode for Option<T> {
    fn encode(&self, out: &mut Vec<u8>) {
        match self {
            None => put_u8(out, 0),
            Some(v) => {
                put_u8(out, 1);
                v.encode(out);
            }
        }
    }
}

impl<T: Decode> Decode for Option<T> {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        if r.bool()? {
            Ok(Some(T::decode(r)?))
        } else {
            Ok(None)
        }
    }
}

pub fn to_bytes<T: Encode>(v: &T) -> Vec<u8> {
    let mut out = Vec::new();
    v.encode(&mut out);
    out
}

pub fn from_bytes<T: Decode>(bytes: &[u8]) -> Result<T> {
    let mut r = Reader::new(bytes);
    let v = T::decode(&mut r)?;
    r.finish()?;
    Ok(v)
}

/// Named byte sections, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sections {
    entries: Vec<(u32, Vec<u8>)>,
}

impl Sections {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push<T: Encode>(&mut self, id: u32, v: &T) {
        self.push_raw(id, to_bytes(v));
    }

    pub fn push_raw(&mut self, id: u32, bytes: Vec<u8>) {
        self.entries.push((id, bytes));
    }

    pub fn raw(&self, id: u32) -> Option<&[u8]> {
        self.entries.iter().find(|e| e.0 == id).map(|e| e.1.as_slice())
    }

    pub fn get<T: Decode>(&self, id: u32) -> Result<T> {
        let bytes = self.raw(id).ok_or_else(|| Error::corrupt(format!("missing section {id}")))?;
        from_bytes(bytes)
    }

    pub fn get_opt<T: Decode>(&self, id: u32) -> Result<Option<T>> {
        self.raw(id).map(from_bytes).transpose()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &[u8])> {
        self.entries.iter().map(|(id, b)| (*id, b.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
