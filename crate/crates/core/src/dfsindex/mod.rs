//! Indexing-model structure: answers DFS queries from a compact index plus
//! read access to the graph it was built from.

mod arrays;
mod tcrep;

pub use arrays::{tree_in_adjacency_order, GraphTree, TreeArrays, TreeNav};
pub use tcrep::{MinitreeRecord, Reconstructed, TcRep};

use crate::bitvec::PlainBitvector;
use crate::codec::{put_u8, put_usize, Decode, Encode, Reader, Sections};
use crate::format::section;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyGraph, Orientation};
use crate::lexdfs::{lex_dfs, Answer, DfsQueries, Query};
use crate::tree::OrderedTree;
use crate::treecover::default_l;

/// How the degree-sequence bitvectors are stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BuildMode {
    /// Compressed when `m > 4n`.
    #[default]
    Auto,
    Plain,
    Compressed,
}

impl BuildMode {
    pub fn compresses(self, n: usize, m: usize) -> bool {
        match self {
            BuildMode::Auto => m > 4 * n,
            BuildMode::Plain => false,
            BuildMode::Compressed => true,
        }
    }
}

impl std::str::FromStr for BuildMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(BuildMode::Auto),
            "plain" => Ok(BuildMode::Plain),
            "compressed" => Ok(BuildMode::Compressed),
            _ => Err(Error::input(format!("unknown mode {s:?} (auto, plain, compressed)"))),
        }
    }
}

/// Parent/child arrays and tree-cover representation of one tree or forest
/// over a graph. Forests hang below a virtual root `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeIndex {
    arrays: TreeArrays,
    tc: TcRep,
}

impl TreeIndex {
    /// `tree` must list children in child-side adjacency order.
    pub fn build(g: &AdjacencyGraph, orient: Orientation, tree: &OrderedTree, virtual_root: bool, compressed: bool) -> TreeIndex {
        let arrays = TreeArrays::build(g, orient, tree, virtual_root, compressed);
        let tc = TcRep::build(tree, default_l(g.n()), &arrays.bind(g));
        TreeIndex { arrays, tc }
    }

    pub fn arrays(&self) -> &TreeArrays {
        &self.arrays
    }

    pub fn cover(&self) -> &TcRep {
        &self.tc
    }

    pub fn nav<'a>(&'a self, g: &'a AdjacencyGraph) -> GraphTree<'a> {
        self.arrays.bind(g)
    }

    pub fn parent(&self, g: &AdjacencyGraph, v: usize) -> Option<usize> {
        self.arrays.parent_slot(g, v).map(|p| p.0)
    }

    pub fn num_children(&self, v: usize) -> usize {
        self.arrays.num_children(v)
    }

    pub fn children(&self, g: &AdjacencyGraph, v: usize) -> Vec<usize> {
        (1..=self.num_children(v)).map(|j| self.arrays.child(g, v, j)).collect()
    }

    pub fn dfi(&self, g: &AdjacencyGraph, v: usize) -> Result<usize> {
        self.tc.dfi(&self.nav(g), v)
    }

    pub fn subtree_size(&self, g: &AdjacencyGraph, v: usize) -> Result<usize> {
        self.tc.subtree_size(&self.nav(g), v)
    }

    pub fn dfi_and_size(&self, g: &AdjacencyGraph, v: usize) -> Result<(usize, usize)> {
        self.tc.dfi_and_size(&self.nav(g), v)
    }

    pub fn vertex_at(&self, g: &AdjacencyGraph, i: usize) -> Result<usize> {
        self.tc.vertex_at(&self.nav(g), i)
    }

    pub fn preorder(&self, g: &AdjacencyGraph) -> Vec<usize> {
        self.tc.preorder(&self.nav(g))
    }

    /// Minitree root reached by climbing from `v` (`v` itself if it is one).
    pub fn minitree_root_above(&self, g: &AdjacencyGraph, mut v: usize) -> usize {
        while !self.tc.is_minitree_root(v) {
            v = self.parent(g, v).expect("the tree root is a minitree root");
        }
        v
    }

    /// Named components: `(name, payload bits, directory bits)`.
    pub fn components(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> =
            self.arrays.components().into_iter().map(|(k, p, a)| (k.to_string(), p, a)).collect();
        out.extend(self.tc.components().into_iter().map(|(k, b)| (k.to_string(), b, 0)));
        out
    }

    pub fn total_bits(&self) -> usize {
        self.arrays.total_bits() + self.tc.total_bits()
    }
}

impl Encode for TreeIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        self.arrays.encode(out);
        self.tc.encode(out);
    }
}

impl Decode for TreeIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let arrays = TreeArrays::decode(r)?;
        let tc = TcRep::decode(r)?;
        Self::assemble(arrays, tc)
    }
}

impl TreeIndex {
    pub fn put_sections(&self, s: &mut Sections) {
        self.arrays.put_sections(s);
        s.push(section::COVER, &self.tc);
    }

    pub fn from_sections(s: &Sections) -> Result<Self> {
        Self::assemble(TreeArrays::from_sections(s)?, s.get(section::COVER)?)
    }

    fn assemble(arrays: TreeArrays, tc: TcRep) -> Result<Self> {
        let nodes = arrays.n() + arrays.has_virtual_root() as usize;
        if tc.root() != arrays.root() || tc.minitree_roots() == 0 || tc.size() > nodes {
            return Err(Error::corrupt("tree arrays and cover disagree"));
        }
        Ok(TreeIndex { arrays, tc })
    }
}

/// Index over the lex-DFS tree of a graph from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsIndex {
    n: usize,
    m: usize,
    directed: bool,
    source: usize,
    reached: PlainBitvector,
    tree: TreeIndex,
}

impl DfsIndex {
    pub fn build(g: &AdjacencyGraph, source: usize, mode: BuildMode) -> Result<DfsIndex> {
        let r = lex_dfs(g, source, Orientation::Forward)?;
        Ok(Self::from_tree(g, source, &r.tree, mode))
    }

    /// Indexes an already computed lex-DFS tree rooted at `source`.
    pub fn from_tree(g: &AdjacencyGraph, source: usize, tree: &OrderedTree, mode: BuildMode) -> DfsIndex {
        let compressed = mode.compresses(g.n(), g.m());
        let mut seen: Vec<usize> = tree.order().iter().map(|&v| v as usize).collect();
        seen.sort_unstable();
        let reached = PlainBitvector::from_ones(g.n(), seen);
        DfsIndex {
            n: g.n(),
            m: g.m(),
            directed: g.is_directed(),
            source,
            reached,
            tree: TreeIndex::build(g, Orientation::Forward, tree, false, compressed),
        }
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

    pub fn reached_count(&self) -> usize {
        self.reached.count_ones()
    }

    pub fn is_compressed(&self) -> bool {
        self.tree.arrays().is_compressed()
    }

    pub fn tree_index(&self) -> &TreeIndex {
        &self.tree
    }

    /// Pairs the index with its graph; fails if the graph's shape differs.
    pub fn bind<'a>(&'a self, g: &'a AdjacencyGraph) -> Result<DfsView<'a>> {
        if g.n() != self.n || g.m() != self.m || g.is_directed() != self.directed {
            return Err(Error::input(format!(
                "graph (n={}, m={}, directed={}) does not match index (n={}, m={}, directed={})",
                g.n(),
                g.m(),
                g.is_directed(),
                self.n,
                self.m,
                self.directed
            )));
        }
        Ok(DfsView { idx: self, g })
    }

    /// Exact bit counts per component, then totals.
    pub fn space_report(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        let mut total = 0;
        for (name, payload, aux) in self.tree.components() {
            out.push((format!("{name}_bits"), payload));
            if aux > 0 {
                out.push((format!("{name}_aux_bits"), aux));
            }
            total += payload + aux;
        }
        out.push(("reached_bits".into(), self.reached.total_bits()));
        total += self.reached.total_bits();
        out.push(("total_bits".into(), total));
        out
    }

    pub fn total_bits(&self) -> usize {
        self.tree.total_bits() + self.reached.total_bits()
    }
}

impl Encode for DfsIndex {
    fn encode(&self, out: &mut Vec<u8>) {
        put_usize(out, self.n);
        put_usize(out, self.m);
        put_u8(out, self.directed as u8);
        put_usize(out, self.source);
        self.reached.encode(out);
        self.tree.encode(out);
    }
}

impl Decode for DfsIndex {
    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let (n, m, directed, source) = (r.usize()?, r.usize()?, r.bool()?, r.usize()?);
        let reached = PlainBitvector::decode(r)?;
        let tree = TreeIndex::decode(r)?;
        Self::assemble(n, m, directed, source, reached, tree)
    }
}

impl DfsIndex {
    /// Header, reached marks, one section per bit array, and the cover.
    pub fn to_sections(&self) -> Sections {
        let mut s = Sections::new();
        let mut meta = Vec::new();
        put_usize(&mut meta, self.n);
        put_usize(&mut meta, self.m);
        put_u8(&mut meta, self.directed as u8);
        put_usize(&mut meta, self.source);
        s.push_raw(section::META, meta);
        s.push(section::REACHED, &self.reached);
        self.tree.put_sections(&mut s);
        s
    }

    pub fn from_sections(s: &Sections) -> Result<Self> {
        let meta = s.raw(section::META).ok_or_else(|| Error::corrupt("missing header section"))?;
        let mut r = Reader::new(meta);
        let (n, m, directed, source) = (r.usize()?, r.usize()?, r.bool()?, r.usize()?);
        r.finish()?;
        Self::assemble(n, m, directed, source, s.get(section::REACHED)?, TreeIndex::from_sections(s)?)
    }

    fn assemble(n: usize, m: usize, directed: bool, source: usize, reached: PlainBitvector, tree: TreeIndex) -> Result<Self> {
        let ok = source >= 1
            && source <= n
            && reached.len() == n
            && reached.get(source)
            && tree.arrays().n() == n
            && tree.arrays().root() == source
            && !tree.arrays().has_virtual_root()
            && tree.cover().size() == reached.count_ones();
        if !ok {
            return Err(Error::corrupt("dfs index header disagrees with its arrays"));
        }
        Ok(DfsIndex { n, m, directed, source, reached, tree })
    }
}

/// A [`DfsIndex`] bound to its graph.
#[derive(Clone, Copy)]
pub struct DfsView<'a> {
    idx: &'a DfsIndex,
    g: &'a AdjacencyGraph,
}

impl DfsView<'_> {
    pub fn index(&self) -> &DfsIndex {
        self.idx
    }

    fn require(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.idx.n {
            return Err(Error::range("vertex", v, 1, self.idx.n));
        }
        if !self.idx.reached.get(v) {
            return Err(Error::Unreached(v));
        }
        Ok(())
    }

    pub fn parent(&self, v: usize) -> Result<Option<usize>> {
        self.require(v)?;
        Ok(self.idx.tree.parent(self.g, v))
    }

    pub fn num_children(&self, v: usize) -> Result<usize> {
        self.require(v)?;
        Ok(self.idx.tree.num_children(v))
    }

    pub fn children(&self, v: usize) -> Result<Vec<usize>> {
        self.require(v)?;
        Ok(self.idx.tree.children(self.g, v))
    }

    pub fn dfi(&self, v: usize) -> Result<usize> {
        self.require(v)?;
        self.idx.tree.dfi(self.g, v)
    }

    pub fn subtree_size(&self, v: usize) -> Result<usize> {
        self.require(v)?;
        self.idx.tree.subtree_size(self.g, v)
    }

    pub fn first_visited(&self, u: usize, v: usize) -> Result<usize> {
        let (du, dv) = (self.dfi(u)?, self.dfi(v)?);
        Ok(if du <= dv { u } else { v })
    }

    /// Proper ancestry: a vertex is not its own ancestor.
    pub fn is_ancestor(&self, u: usize, v: usize) -> Result<bool> {
        self.require(u)?;
        let dv = self.dfi(v)?;
        if u == v {
            return Ok(false);
        }
        let (du, su) = self.idx.tree.dfi_and_size(self.g, u)?;
        Ok(du <= dv && dv < du + su)
    }

    pub fn preorder(&self) -> Vec<usize> {
        self.idx.tree.preorder(self.g)
    }

    pub fn vertex_at(&self, i: usize) -> Result<usize> {
        self.idx.tree.vertex_at(self.g, i)
    }

    /// Minitree of a non-root vertex, rebuilt from the index.
    pub fn reconstruct(&self, v: usize) -> Result<Reconstructed> {
        self.require(v)?;
        self.idx.tree.cover().reconstruct(&self.idx.tree.nav(self.g), v)
    }
}

impl DfsQueries for DfsView<'_> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexdfs::{all_queries, oracle_dfs, oracle_query};

    fn g6() -> AdjacencyGraph {
        AdjacencyGraph::parse("6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n").unwrap()
    }

    #[test]
    fn g6_examples() {
        let g = g6();
        let idx = DfsIndex::build(&g, 1, BuildMode::Plain).unwrap();
        let q = idx.bind(&g).unwrap();
        assert_eq!(q.parent(3).unwrap(), Some(5));
        assert_eq!(q.parent(1).unwrap(), None);
        assert_eq!(q.parent(6).unwrap(), Some(5));
        assert_eq!(q.num_children(2).unwrap(), 2);
        assert_eq!(q.num_children(4).unwrap(), 0);
        assert_eq!(q.num_children(1).unwrap(), 1);
        assert_eq!(q.children(5).unwrap(), [3, 6]);
        assert_eq!(q.children(1).unwrap(), [2]);
        assert_eq!(q.dfi(4).unwrap(), 3);
        assert_eq!(q.dfi(1).unwrap(), 1);
        assert_eq!(q.dfi(3).unwrap(), 5);
        assert_eq!(q.first_visited(3, 4).unwrap(), 4);
        assert_eq!(q.first_visited(1, 6).unwrap(), 1);
        assert_eq!(q.subtree_size(2).unwrap(), 5);
        assert!(q.is_ancestor(2, 6).unwrap());
        assert!(!q.is_ancestor(6, 2).unwrap());
        assert!(!q.is_ancestor(4, 4).unwrap());
        assert!((2..=6).all(|x| q.is_ancestor(1, x).unwrap()));
        assert_eq!(q.preorder(), [1, 2, 4, 5, 3, 6]);
        assert_eq!(q.vertex_at(4).unwrap(), 5);
        assert_eq!(q.vertex_at(1).unwrap(), 1);
        assert!(q.vertex_at(7).is_err());
        let report = idx.space_report();
        let get = |k: &str| report.iter().find(|e| e.0 == k).unwrap().1;
        assert_eq!(get("D_bits"), 18);
        assert_eq!(get("E_bits"), 18);
        assert_eq!(get("P_bits"), 18);
    }

    #[test]
    fn source_out_of_range() {
        assert!(matches!(DfsIndex::build(&g6(), 99, BuildMode::Auto), Err(Error::Input(_))));
    }

    #[test]
    fn unreached_vertices_are_domain_errors() {
        let g = AdjacencyGraph::directed_from_out(vec![vec![2], vec![], vec![1]]).unwrap();
        let idx = DfsIndex::build(&g, 1, BuildMode::Plain).unwrap();
        let q = idx.bind(&g).unwrap();
        assert!(matches!(q.parent(3), Err(Error::Unreached(3))));
        assert!(matches!(q.is_ancestor(1, 3), Err(Error::Unreached(3))));
        assert_eq!(q.preorder(), [1, 2]);
        let r = oracle_dfs(&g, 1).unwrap();
        for query in all_queries(&r) {
            assert_eq!(q.answer(&query).unwrap(), oracle_query(&r, &query).unwrap());
        }
    }

    #[test]
    fn single_vertex() {
        let g = AdjacencyGraph::undirected(vec![vec![]]).unwrap();
        let idx = DfsIndex::build(&g, 1, BuildMode::Auto).unwrap();
        let q = idx.bind(&g).unwrap();
        assert_eq!(q.preorder(), [1]);
        assert_eq!(q.subtree_size(1).unwrap(), 1);
        let report = idx.space_report();
        assert_eq!(report.iter().find(|e| e.0 == "D_bits").unwrap().1, 1);
    }

    #[test]
    fn bind_rejects_other_graphs() {
        let g = g6();
        let idx = DfsIndex::build(&g, 1, BuildMode::Plain).unwrap();
        let other = AdjacencyGraph::undirected(vec![vec![2], vec![1]]).unwrap();
        assert!(idx.bind(&other).is_err());
    }

    #[test]
    fn round_trip() {
        let g = g6();
        for mode in [BuildMode::Plain, BuildMode::Compressed] {
            let idx = DfsIndex::build(&g, 2, mode).unwrap();
            let bytes = crate::codec::to_bytes(&idx);
            let back: DfsIndex = crate::codec::from_bytes(&bytes).unwrap();
            assert_eq!(back, idx);
            assert_eq!(crate::codec::to_bytes(&back), bytes);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(40))]
        #[test]
        fn matches_oracle(n in 1usize..60, dens in 1usize..5, directed: bool, seed: u64, src in 0usize..60) {
            let g = if directed {
                crate::gen::directed(n, n * dens, false, seed)
            } else {
                crate::gen::connected_undirected(n, n * dens, seed)
            };
            let source = src % n + 1;
            let r = oracle_dfs(&g, source).unwrap();
            for mode in [BuildMode::Plain, BuildMode::Compressed] {
                let idx = DfsIndex::build(&g, source, mode).unwrap();
                let q = idx.bind(&g).unwrap();
                for query in all_queries(&r) {
                    proptest::prop_assert_eq!(q.answer(&query).unwrap(), oracle_query(&r, &query).unwrap(), "{:?}", query);
                }
                for v in r.order() {
                    proptest::prop_assert_eq!(q.subtree_size(*v as usize).unwrap(), r.subtree_size(*v as usize).unwrap());
                }
            }
        }
    }
}
