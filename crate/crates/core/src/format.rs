//! On-disk index files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic      8 bytes  "DFSIDX01"
//! version    u32
//! model      u8       0 indexing, 1 encoding, 2 sp, 3 conn, 4 scc, 5 bicon, 6 tecc
//! directed   u8
//! mode       u8       0 plain, 1 compressed
//! reserved   u8
//! eps_milli  u32      epsilon x 1000 (encoding model), else 0
//! n, m       u64 each
//! source     u64      0 when the index has none
//! count      u32
//! table      count x {id u32, offset u64, length u64}
//! sections   each starting on an 8-byte boundary
//! checksum   u64      FNV-1a over every preceding byte
//! ```

use std::path::Path;

use crate::apps::{BiconIndex, ConnIndex, SccIndex, SpIndex, TeccIndex};
use crate::codec::{put_u32, put_u64, put_u8, Decode, Encode, Reader, Sections};
use crate::dfsindex::DfsIndex;
use crate::encindex::EncIndex;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"DFSIDX01";
pub const VERSION: u32 = 1;

const FIXED_HEADER: usize = 8 + 4 + 4 + 4 + 24 + 4;
const TABLE_ENTRY: usize = 4 + 8 + 8;

/// Section ids.
pub mod section {
    pub const META: u32 = 1;
    pub const REACHED: u32 = 2;
    pub const TREE: u32 = 3;
    pub const D: u32 = 4;
    pub const E: u32 = 5;
    pub const D2: u32 = 6;
    pub const P: u32 = 7;
    pub const D_T: u32 = 8;
    pub const ROOTS: u32 = 9;
    pub const COVER: u32 = 10;
    pub const PERM: u32 = 11;
    pub const BP: u32 = 12;
    pub const APP: u32 = 13;

    pub fn name(id: u32) -> &'static str {
        match id {
            META => "meta",
            REACHED => "reached",
            TREE => "tree_meta",
            D => "D",
            E => "E",
            D2 => "D2",
            P => "P",
            D_T => "D_T",
            ROOTS => "roots",
            COVER => "cover",
            PERM => "perm",
            BP => "tree",
            APP => "app",
            _ => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelTag {
    Indexing,
    Encoding,
    Sp,
    Conn,
    Scc,
    Bicon,
    Tecc,
}

impl ModelTag {
    const ALL: [ModelTag; 7] =
        [ModelTag::Indexing, ModelTag::Encoding, ModelTag::Sp, ModelTag::Conn, ModelTag::Scc, ModelTag::Bicon, ModelTag::Tecc];

    pub fn name(self) -> &'static str {
        match self {
            ModelTag::Indexing => "indexing",
            ModelTag::Encoding => "encoding",
            ModelTag::Sp => "sp",
            ModelTag::Conn => "conn",
            ModelTag::Scc => "scc",
            ModelTag::Bicon => "bicon",
            ModelTag::Tecc => "tecc",
        }
    }

    fn from_u8(b: u8) -> Result<ModelTag> {
        Self::ALL.get(b as usize).copied().ok_or_else(|| Error::corrupt(format!("unknown model tag {b}")))
    }
}

/// Any index that can be stored in a file.
#[derive(Clone, Debug, PartialEq)]
pub enum StoredIndex {
    Indexing(DfsIndex),
    Encoding(EncIndex),
    Sp(SpIndex),
    Conn(ConnIndex),
    Scc(SccIndex),
    Bicon(BiconIndex),
    Tecc(TeccIndex),
}

impl StoredIndex {
    pub fn tag(&self) -> ModelTag {
        match self {
            StoredIndex::Indexing(_) => ModelTag::Indexing,
            StoredIndex::Encoding(_) => ModelTag::Encoding,
            StoredIndex::Sp(_) => ModelTag::Sp,
            StoredIndex::Conn(_) => ModelTag::Conn,
            StoredIndex::Scc(_) => ModelTag::Scc,
            StoredIndex::Bicon(_) => ModelTag::Bicon,
            StoredIndex::Tecc(_) => ModelTag::Tecc,
        }
    }

    pub fn header(&self) -> Header {
        let (shape, source, compressed, eps) = match self {
            StoredIndex::Indexing(x) => ((x.n(), x.m(), x.is_directed()), x.source(), x.is_compressed(), 0),
            StoredIndex::Encoding(x) => {
                ((x.n(), x.m(), x.is_directed()), x.source(), false, (x.epsilon() * 1000.0).round() as u32)
            }
            StoredIndex::Sp(x) => {
                let s = x.shape();
                ((s.n, s.m, s.directed), x.source(), x.tree().arrays().is_compressed(), 0)
            }
            StoredIndex::Conn(x) => (x.shape().tuple(), 0, x.forest().tree().arrays().is_compressed(), 0),
            StoredIndex::Scc(x) => (x.shape().tuple(), 0, x.forest().tree().arrays().is_compressed(), 0),
            StoredIndex::Bicon(x) => (x.shape().tuple(), 0, x.tree().arrays().is_compressed(), 0),
            StoredIndex::Tecc(x) => (x.shape().tuple(), 0, x.tree().arrays().is_compressed(), 0),
        };
        Header {
            version: VERSION,
            model: self.tag(),
            n: shape.0,
            m: shape.1,
            directed: shape.2,
            source,
            compressed,
            epsilon_milli: eps,
        }
    }

    fn sections(&self) -> Sections {
        fn app<T: Encode>(x: &T) -> Sections {
            let mut s = Sections::new();
            s.push(section::APP, x);
            s
        }
        match self {
            StoredIndex::Indexing(x) => x.to_sections(),
            StoredIndex::Encoding(x) => x.to_sections(),
            StoredIndex::Sp(x) => app(x),
            StoredIndex::Conn(x) => app(x),
            StoredIndex::Scc(x) => app(x),
            StoredIndex::Bicon(x) => app(x),
            StoredIndex::Tecc(x) => app(x),
        }
    }

    fn from_sections(tag: ModelTag, s: &Sections) -> Result<StoredIndex> {
        Ok(match tag {
            ModelTag::Indexing => StoredIndex::Indexing(DfsIndex::from_sections(s)?),
            ModelTag::Encoding => StoredIndex::Encoding(EncIndex::from_sections(s)?),
            ModelTag::Sp => StoredIndex::Sp(s.get(section::APP)?),
            ModelTag::Conn => StoredIndex::Conn(s.get(section::APP)?),
            ModelTag::Scc => StoredIndex::Scc(s.get(section::APP)?),
            ModelTag::Bicon => StoredIndex::Bicon(s.get(section::APP)?),
            ModelTag::Tecc => StoredIndex::Tecc(s.get(section::APP)?),
        })
    }

    /// Exact bit counts per component, then the total.
    pub fn space_report(&self) -> Vec<(String, usize)> {
        let comps = match self {
            StoredIndex::Indexing(x) => return x.space_report(),
            StoredIndex::Encoding(x) => return x.space_report(),
            StoredIndex::Sp(x) => x.components(),
            StoredIndex::Conn(x) => x.components(),
            StoredIndex::Scc(x) => x.components(),
            StoredIndex::Bicon(x) => x.components(),
            StoredIndex::Tecc(x) => x.components(),
        };
        let mut out = Vec::new();
        let mut total = 0;
        for (name, payload, aux) in comps {
            out.push((format!("{name}_bits"), payload));
            if aux > 0 {
                out.push((format!("{name}_aux_bits"), aux));
            }
            total += payload + aux;
        }
        out.push(("total_bits".into(), total));
        out
    }

    pub fn total_bits(&self) -> usize {
        self.space_report().last().map_or(0, |e| e.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub version: u32,
    pub model: ModelTag,
    pub n: usize,
    pub m: usize,
    pub directed: bool,
    pub source: usize,
    pub compressed: bool,
    pub epsilon_milli: u32,
}

/// A decoded file: header plus raw sections, before the index is rebuilt.
#[derive(Clone, Debug)]
pub struct IndexFile {
    pub header: Header,
    pub sections: Sections,
}

/// 64-bit FNV-1a.
pub fn checksum(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn pad8(out: &mut Vec<u8>) {
    out.resize(out.len().next_multiple_of(8), 0);
}

impl IndexFile {
    pub fn of(index: &StoredIndex) -> IndexFile {
        IndexFile { header: index.header(), sections: index.sections() }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let h = &self.header;
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        put_u32(&mut out, h.version);
        put_u8(&mut out, h.model as u8);
        put_u8(&mut out, h.directed as u8);
        put_u8(&mut out, h.compressed as u8);
        put_u8(&mut out, 0);
        put_u32(&mut out, h.epsilon_milli);
        put_u64(&mut out, h.n as u64);
        put_u64(&mut out, h.m as u64);
        put_u64(&mut out, h.source as u64);
        put_u32(&mut out, self.sections.len() as u32);
        let mut offset = (FIXED_HEADER + TABLE_ENTRY * self.sections.len()).next_multiple_of(8);
        for (id, bytes) in self.sections.iter() {
            put_u32(&mut out, id);
            put_u64(&mut out, offset as u64);
            put_u64(&mut out, bytes.len() as u64);
            offset = (offset + bytes.len()).next_multiple_of(8);
        }
        for (_, bytes) in self.sections.iter() {
            pad8(&mut out);
            out.extend_from_slice(bytes);
        }
        pad8(&mut out);
        let sum = checksum(&out);
        put_u64(&mut out, sum);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<IndexFile> {
        if bytes.len() < MAGIC.len() || &bytes[..8] != MAGIC {
            return Err(Error::corrupt("not an index file (bad magic)"));
        }
        if bytes.len() < FIXED_HEADER + 8 {
            return Err(Error::corrupt("checksum failure: file is truncated"));
        }
        let (body, tail) = bytes.split_at(bytes.len() - 8);
        let stored = u64::from_le_bytes(tail.try_into().expect("8 bytes"));
        if checksum(body) != stored {
            return Err(Error::corrupt("checksum failure"));
        }
        let mut r = Reader::new(&body[8..]);
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::corrupt(format!("unsupported version {version} (expected {VERSION})")));
        }
        let model = ModelTag::from_u8(r.u8()?)?;
        let directed = r.bool()?;
        let compressed = r.bool()?;
        r.u8()?;
        let epsilon_milli = r.u32()?;
        let n = r.u64()? as usize;
        let m = r.u64()? as usize;
        let source = r.u64()? as usize;
        let count = r.u32()? as usize;
        if count > body.len() / TABLE_ENTRY {
            return Err(Error::corrupt("section table larger than the file"));
        }
        let mut table = Vec::with_capacity(count);
        for _ in 0..count {
            table.push((r.u32()?, r.u64()?, r.u64()?));
        }
        let mut sections = Sections::new();
        let mut floor = FIXED_HEADER + TABLE_ENTRY * count;
        for (id, off, len) in table {
            let (off, len) = (off as usize, len as usize);
            let end = off.checked_add(len).filter(|&e| e <= body.len());
            match end {
                Some(end) if off >= floor => {
                    sections.push_raw(id, body[off..end].to_vec());
                    floor = end;
                }
                _ => return Err(Error::corrupt(format!("section {} out of bounds or overlapping", section::name(id)))),
            }
        }
        let header = Header { version, model, n, m, directed, source, compressed, epsilon_milli };
        Ok(IndexFile { header, sections })
    }

    /// Rebuilds the index and checks it against the header.
    pub fn index(&self) -> Result<StoredIndex> {
        let idx = StoredIndex::from_sections(self.header.model, &self.sections)?;
        if idx.header() != self.header {
            return Err(Error::corrupt("file header disagrees with its sections"));
        }
        Ok(idx)
    }

    /// Section names and payload sizes in bits.
    pub fn section_bits(&self) -> Vec<(&'static str, usize)> {
        self.sections.iter().map(|(id, b)| (section::name(id), b.len() * 8)).collect()
    }
}

pub fn to_bytes(index: &StoredIndex) -> Vec<u8> {
    IndexFile::of(index).to_bytes()
}

pub fn from_bytes(bytes: &[u8]) -> Result<StoredIndex> {
    IndexFile::from_bytes(bytes)?.index()
}

pub fn save(index: &StoredIndex, path: &Path) -> Result<()> {
    std::fs::write(path, to_bytes(index))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<StoredIndex> {
    from_bytes(&std::fs::read(path)?)
}

impl Encode for StoredIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&to_bytes(self));
    }
}

impl Decode for StoredIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let rest = r.take(r.remaining())?;
        from_bytes(rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfsindex::BuildMode;
    use crate::graph::AdjacencyGraph;

    fn g6() -> AdjacencyGraph {
        AdjacencyGraph::parse("6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n").unwrap()
    }

    fn all_kinds() -> Vec<StoredIndex> {
        let g = g6();
        let d = crate::gen::directed(40, 100, false, 9);
        vec![
            StoredIndex::Indexing(DfsIndex::build(&g, 1, BuildMode::Plain).unwrap()),
            StoredIndex::Indexing(DfsIndex::build(&d, 3, BuildMode::Compressed).unwrap()),
            StoredIndex::Encoding(EncIndex::build(&d, 2, 0.25).unwrap()),
            StoredIndex::Sp(SpIndex::build(&g, 2, false).unwrap()),
            StoredIndex::Conn(ConnIndex::build(&g, true).unwrap()),
            StoredIndex::Scc(SccIndex::build(&d, false).unwrap()),
            StoredIndex::Bicon(BiconIndex::build(&g, false).unwrap()),
            StoredIndex::Tecc(TeccIndex::build(&g, false).unwrap()),
        ]
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for idx in all_kinds() {
            let bytes = to_bytes(&idx);
            let back = from_bytes(&bytes).unwrap();
            assert_eq!(back, idx);
            assert_eq!(to_bytes(&back), bytes);
        }
    }

    #[test]
    fn indexing_sections_are_named() {
        let f = IndexFile::of(&all_kinds()[0]);
        let names: Vec<&str> = f.section_bits().iter().map(|e| e.0).collect();
        for want in ["D", "E", "P", "D_T", "cover"] {
            assert!(names.contains(&want), "{names:?}");
        }
        let f = IndexFile::of(&all_kinds()[2]);
        let names: Vec<&str> = f.section_bits().iter().map(|e| e.0).collect();
        assert!(names.contains(&"perm") && names.contains(&"tree"));
        assert_eq!(f.header.epsilon_milli, 250);
    }

    #[test]
    fn damage_is_detected() {
        let bytes = to_bytes(&all_kinds()[0]);
        for cut in [0, 7, 20, bytes.len() / 2, bytes.len() - 1] {
            assert!(matches!(from_bytes(&bytes[..cut]), Err(Error::Corrupt(_))), "cut {cut}");
        }
        let mut flipped = bytes.clone();
        flipped[bytes.len() / 2] ^= 0x10;
        let e = from_bytes(&flipped).unwrap_err();
        assert!(e.to_string().contains("checksum"));
    }

    #[test]
    fn version_mismatch_refuses() {
        let mut bytes = to_bytes(&all_kinds()[0]);
        bytes[8] = 2;
        let n = bytes.len() - 8;
        let sum = checksum(&bytes[..n]);
        bytes[n..].copy_from_slice(&sum.to_le_bytes());
        let e = from_bytes(&bytes).unwrap_err();
        assert!(e.to_string().contains("version"), "{e}");
    }

    #[test]
    fn overlapping_sections_refused() {
        let mut bytes = to_bytes(&all_kinds()[0]);
        // second table entry's offset := first entry's offset
        let first = FIXED_HEADER;
        let off: [u8; 8] = bytes[first + 4..first + 12].try_into().unwrap();
        bytes[first + TABLE_ENTRY + 4..first + TABLE_ENTRY + 12].copy_from_slice(&off);
        let n = bytes.len() - 8;
        let sum = checksum(&bytes[..n]);
        bytes[n..].copy_from_slice(&sum.to_le_bytes());
        let e = from_bytes(&bytes).unwrap_err();
        assert!(e.to_string().contains("overlapping"), "{e}");
    }
}
