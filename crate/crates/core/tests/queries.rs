mod common;

use dfs_index::dfsindex::{BuildMode, DfsIndex};
use dfs_index::encindex::EncIndex;
use dfs_index::gen;
use dfs_index::graph::AdjacencyGraph;
use dfs_index::lexdfs::{all_queries, oracle_dfs, oracle_query, Answer, DfsQueries, Query};

const G6: &str = "6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n";

fn g6() -> AdjacencyGraph {
    AdjacencyGraph::parse(G6).unwrap()
}

/// Recursive lex-DFS: order and parents.
fn recursive_dfs(g: &AdjacencyGraph, s: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    fn go(g: &AdjacencyGraph, v: usize, order: &mut Vec<usize>, parent: &mut Vec<Option<usize>>, seen: &mut Vec<bool>) {
        seen[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !seen[u as usize] {
                parent[u as usize] = Some(v);
                go(g, u as usize, order, parent, seen);
            }
        }
    }
    let (mut order, mut parent, mut seen) = (Vec::new(), vec![None; g.n() + 1], vec![false; g.n() + 1]);
    go(g, s, &mut order, &mut parent, &mut seen);
    (order, parent)
}

#[test]
fn g6_indexing_model_values() {
    let g = g6();
    for mode in [BuildMode::Plain, BuildMode::Compressed] {
        let idx = DfsIndex::build(&g, 1, mode).unwrap();
        let v = idx.bind(&g).unwrap();
        assert_eq!(v.parent(3).unwrap(), Some(5));
        assert_eq!(v.parent(6).unwrap(), Some(5));
        assert_eq!(v.parent(1).unwrap(), None);
        assert_eq!(v.num_children(2).unwrap(), 2);
        assert_eq!(v.num_children(4).unwrap(), 0);
        assert_eq!(v.num_children(1).unwrap(), 1);
        assert_eq!(v.children(5).unwrap(), [3, 6]);
        assert_eq!(v.children(1).unwrap(), [2]);
        assert_eq!(v.dfi(4).unwrap(), 3);
        assert_eq!(v.dfi(3).unwrap(), 5);
        assert_eq!(v.first_visited(3, 4).unwrap(), 4);
        assert_eq!(v.first_visited(1, 6).unwrap(), 1);
        assert_eq!(v.subtree_size(2).unwrap(), 5);
        assert_eq!(v.subtree_size(5).unwrap(), 3);
        assert!(v.is_ancestor(2, 6).unwrap());
        assert!(!v.is_ancestor(6, 2).unwrap());
        assert!((2..=6).all(|x| v.is_ancestor(1, x).unwrap()));
        assert_eq!(v.preorder(), [1, 2, 4, 5, 3, 6]);
        assert_eq!(v.vertex_at(4).unwrap(), 5);
    }
    let plain = DfsIndex::build(&g, 1, BuildMode::Plain).unwrap();
    let report = plain.space_report();
    for key in ["D_bits", "E_bits", "P_bits"] {
        assert_eq!(report.iter().find(|e| e.0 == key).unwrap().1, 18, "{key}");
    }
}

#[test]
fn g6_encoding_model_values() {
    let e = EncIndex::build(&g6(), 1, 0.25).unwrap();
    assert_eq!(e.dfi(3).unwrap(), 5);
    assert_eq!(e.parent(3).unwrap(), Some(5));
    assert_eq!(e.children(5).unwrap(), [3, 6]);
    assert_eq!(e.subtree_size(1).unwrap(), 6);
    assert_eq!(e.preorder(), [1, 2, 4, 5, 3, 6]);
    assert_eq!(e.tree().parens_string(), "((()(()())))");
}

#[test]
fn oracle_matches_recursive_dfs() {
    for seed in 0..40 {
        let g = gen::directed(60, 150, seed % 2 == 0, seed);
        let r = oracle_dfs(&g, 1).unwrap();
        let (order, parent) = recursive_dfs(&g, 1);
        assert_eq!(r.order().iter().map(|&v| v as usize).collect::<Vec<_>>(), order);
        assert!((1..=g.n()).all(|v| r.parent(v) == parent[v]));
    }
}

fn check_all(g: &AdjacencyGraph, source: usize) {
    let r = oracle_dfs(g, source).unwrap();
    let qs = all_queries(&r);
    let want: Vec<Answer> = qs.iter().map(|q| oracle_query(&r, q).unwrap()).collect();
    let plain = DfsIndex::build(g, source, BuildMode::Plain).unwrap();
    let comp = DfsIndex::build(g, source, BuildMode::Compressed).unwrap();
    let enc = EncIndex::build(g, source, 0.25).unwrap();
    let (pv, cv) = (plain.bind(g).unwrap(), comp.bind(g).unwrap());
    for (q, w) in qs.iter().zip(&want) {
        assert_eq!(&pv.answer(q).unwrap(), w, "plain {q:?}");
        assert_eq!(&cv.answer(q).unwrap(), w, "compressed {q:?}");
        assert_eq!(&enc.answer(q).unwrap(), w, "encoding {q:?}");
    }
    for v in (1..=g.n()).filter(|&v| !r.reached(v)) {
        assert!(pv.answer(&Query::Parent(v)).is_err());
        assert!(enc.answer(&Query::Dfi(v)).is_err());
    }
}

#[test]
fn random_graphs_match_oracle() {
    for seed in 0..24u64 {
        let n = 2 + (seed as usize * 37) % 90;
        let m = [n * 6 / 5, 2 * n, 4 * n, 8 * n][seed as usize % 4];
        check_all(&gen::connected_undirected(n, m, seed), 1 + seed as usize % n);
        check_all(&gen::directed(n, m, seed % 3 != 0, seed), 1 + seed as usize % n);
    }
}

#[test]
fn degenerate_graphs() {
    check_all(&AdjacencyGraph::undirected(vec![vec![]]).unwrap(), 1);
    check_all(&AdjacencyGraph::undirected(vec![vec![], vec![], vec![]]).unwrap(), 2);
    check_all(&AdjacencyGraph::directed_from_out(vec![vec![2], vec![3], vec![]]).unwrap(), 3);
    let path: Vec<Vec<usize>> = (1..=200).map(|v| [v - 1, v + 1].into_iter().filter(|&u| (1..=200).contains(&u)).collect()).collect();
    check_all(&AdjacencyGraph::undirected(path).unwrap(), 1);
    let star: Vec<Vec<usize>> = (1..=100).map(|v| if v == 1 { (2..=100).collect() } else { vec![1] }).collect();
    check_all(&AdjacencyGraph::undirected(star).unwrap(), 7);
}

#[test]
fn out_of_range_arguments_are_errors() {
    let g = g6();
    let idx = DfsIndex::build(&g, 1, BuildMode::Auto).unwrap();
    let v = idx.bind(&g).unwrap();
    assert!(v.parent(0).is_err() && v.parent(7).is_err());
    assert!(v.vertex_at(7).is_err());
    let e = EncIndex::build(&g, 1, 0.25).unwrap();
    assert!(e.dfi(0).is_err() && e.vertex_at(0).is_err());
    assert!(DfsIndex::build(&g, 99, BuildMode::Auto).unwrap_err().to_string().contains("out of range"));
}
