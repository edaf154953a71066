//! Encoding-model structure: answers DFS queries with no access to the graph.
//!
//! The DFS tree is stored as balanced parentheses addressed by preorder rank,
//! which is the DFI. The permutation `π(v) = DFI(v)` is the only bridge
//! between vertex labels and tree nodes. Vertices the search never reaches
//! take the DFIs after the reached ones, in id order, so `π` stays a
//! permutation of `1..=n`.

mod bp;
mod perm;

pub use bp::BpTree;
pub use perm::{step_for, ShortcutPermutation};

use crate::codec::{put_u64, put_u8, put_usize, Decode, Encode, Reader, Sections};
use crate::format::section;
use crate::error::{Error, Result};
use crate::graph::AdjacencyGraph;
use crate::lexdfs::{oracle_dfs, Answer, DfsQueries, DfsResult, Query};

pub const DEFAULT_EPSILON: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub struct EncIndex {
    n: usize,
    m: usize,
    directed: bool,
    source: usize,
    reached: usize,
    epsilon: f64,
    perm: ShortcutPermutation,
    tree: BpTree,
}

impl EncIndex {
    pub fn build(g: &AdjacencyGraph, source: usize, epsilon: f64) -> Result<EncIndex> {
        let r = oracle_dfs(g, source)?;
        Self::from_dfs(g, &r, epsilon)
    }

    pub fn from_dfs(g: &AdjacencyGraph, r: &DfsResult, epsilon: f64) -> Result<EncIndex> {
        let n = g.n();
        let reached = r.reached_count();
        let mut next = reached;
        let pi: Vec<usize> = (1..=n)
            .map(|v| {
                r.dfi(v).unwrap_or_else(|| {
                    next += 1;
                    next
                })
            })
            .collect();
        Ok(EncIndex {
            n,
            m: g.m(),
            directed: g.is_directed(),
            source: r.source,
            reached,
            epsilon,
            perm: ShortcutPermutation::build(&pi, epsilon)?,
            tree: BpTree::from_tree(&r.tree),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn reached_count(&self) -> usize {
        self.reached
    }

    pub fn perm(&self) -> &ShortcutPermutation {
        &self.perm
    }

    pub fn tree(&self) -> &BpTree {
        &self.tree
    }

    /// Tree node (preorder rank) of a reached vertex.
    fn node(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.n {
            return Err(Error::range("vertex", v, 1, self.n));
        }
        let k = self.perm.apply(v)?;
        if k > self.reached {
            return Err(Error::Unreached(v));
        }
        Ok(k)
    }

    fn label(&self, k: usize) -> usize {
        self.perm.inverse(k).expect("tree nodes are permutation values")
    }

    pub fn dfi(&self, v: usize) -> Result<usize> {
        self.node(v)
    }

    pub fn vertex_at(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.reached {
            return Err(Error::range("dfi", i, 1, self.reached));
        }
        Ok(self.label(i))
    }

    pub fn first_visited(&self, u: usize, v: usize) -> Result<usize> {
        Ok(if self.node(u)? <= self.node(v)? { u } else { v })
    }

    /// Proper ancestry via a level-ancestor probe.
    pub fn is_ancestor(&self, u: usize, v: usize) -> Result<bool> {
        let (ku, kv) = (self.node(u)?, self.node(v)?);
        if ku == kv {
            return Ok(false);
        }
        let (du, dv) = (self.tree.depth(ku)?, self.tree.depth(kv)?);
        Ok(du < dv && self.tree.level_anc(kv, du)? == ku)
    }

    pub fn parent(&self, v: usize) -> Result<Option<usize>> {
        Ok(self.tree.parent(self.node(v)?)?.map(|k| self.label(k)))
    }

    pub fn num_children(&self, v: usize) -> Result<usize> {
        self.tree.degree(self.node(v)?)
    }

    pub fn children(&self, v: usize) -> Result<Vec<usize>> {
        let k = self.node(v)?;
        (1..=self.tree.degree(k)?).map(|i| Ok(self.label(self.tree.child(k, i)?))).collect()
    }

    pub fn subtree_size(&self, v: usize) -> Result<usize> {
        self.tree.subtree_size(self.node(v)?)
    }

    pub fn preorder(&self) -> Vec<usize> {
        (1..=self.reached).map(|i| self.label(i)).collect()
    }

    pub fn space_report(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = self.perm.components().iter().map(|(k, b)| (format!("{k}_bits"), *b)).collect();
        out.push(("tree_parens_bits".into(), self.tree.payload_bits()));
        out.push(("tree_aux_bits".into(), self.tree.aux_bits()));
        out.push(("total_bits".into(), self.total_bits()));
        out
    }

    pub fn total_bits(&self) -> usize {
        self.perm.total_bits() + self.tree.total_bits()
    }
}

impl DfsQueries for EncIndex {
    fn answer(&self, q: &Query) -> Result<Answer> {
        Ok(match *q {
            Query::FirstVisited(u, v) => Answer::Vertex(Some(self.first_visited(u, v)?)),
            Query::IsAncestor(u, v) => Answer::Bool(self.is_ancestor(u, v)?),
            Query::Parent(v) => Answer::Vertex(self.parent(v)?),
            Query::NumChildren(v) => Answer::Count(self.num_children(v)?),
            Query::Children(v) => Answer::List(self.children(v)?),
            Query::Dfi(v) => Answer::Count(self.dfi(v)?),
            Query::Preorder => Answer::List(self.preorder()),
            Query::VertexAt(i) => Answer::Vertex(Some(self.vertex_at(i)?)),
        })
    }
}

impl Encode for EncIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.encode_meta(out);
        self.perm.encode(out);
        self.tree.encode(out);
    }
}

impl Decode for EncIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let meta = Meta::decode(r)?;
        let perm = ShortcutPermutation::decode(r)?;
        let tree = BpTree::decode(r)?;
        meta.assemble(perm, tree)
    }
}

struct Meta {
    n: usize,
    m: usize,
    directed: bool,
    source: usize,
    reached: usize,
    epsilon: f64,
}

impl Meta {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let (n, m, directed, source, reached) = (r.usize()?, r.usize()?, r.bool()?, r.usize()?, r.usize()?);
        Ok(Meta { n, m, directed, source, reached, epsilon: f64::from_bits(r.u64()?) })
    }

    fn assemble(self, perm: ShortcutPermutation, tree: BpTree) -> Result<EncIndex> {
        let Meta { n, m, directed, source, reached, epsilon } = self;
        let ok = perm.len() == n
            && tree.node_count() == reached
            && (1..=n).contains(&source)
            && perm.apply(source).ok() == Some(1)
            && step_for(epsilon).ok() == Some(perm.step());
        if !ok {
            return Err(Error::corrupt("encoding index header disagrees with its arrays"));
        }
        Ok(EncIndex { n, m, directed, source, reached, epsilon, perm, tree })
    }
}

impl EncIndex {
    fn encode_meta(&self, out: &mut Vec<u8>) {
        put_usize(out, self.n);
        put_usize(out, self.m);
        put_u8(out, self.directed as u8);
        put_usize(out, self.source);
        put_usize(out, self.reached);
        put_u64(out, self.epsilon.to_bits());
    }

    /// Header, permutation, and parenthesis sections.
    pub fn to_sections(&self) -> Sections {
        let mut s = Sections::new();
        let mut meta = Vec::new();
        self.encode_meta(&mut meta);
        s.push_raw(section::META, meta);
        s.push(section::PERM, &self.perm);
        s.push(section::BP, &self.tree);
        s
    }

    pub fn from_sections(s: &Sections) -> Result<Self> {
        let raw = s.raw(section::META).ok_or_else(|| Error::corrupt("missing header section"))?;
        let mut r = Reader::new(raw);
        let meta = Meta::decode(&mut r)?;
        r.finish()?;
        meta.assemble(s.get(section::PERM)?, s.get(section::BP)?)
    }
}
