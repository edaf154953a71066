mod common;

use std::collections::BTreeSet;

use common::{edge, naive_dijkstra, tarjan_bcc, tarjan_scc, two_edge_components, Dsu};
use dfs_index::apps::{BiconIndex, ConnIndex, EdgeClass, SccIndex, SpIndex, TeccIndex};
use dfs_index::gen;
use dfs_index::graph::AdjacencyGraph;

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    (1..n).all(|u| (1..n).all(|v| (a[u] == a[v]) == (b[u] == b[v])))
}

#[test]
fn shortest_paths() {
    for seed in 0..20u64 {
        let n = 1 + (seed as usize * 13) % 120;
        let g = if seed % 2 == 0 { gen::connected_undirected(n, 3 * n, seed) } else { gen::directed(n, 3 * n, false, seed) };
        let g = gen::weighted(g, 50, seed);
        let s = 1 + seed as usize % n;
        let sp = SpIndex::build(&g, s, seed % 4 < 2).unwrap();
        let want = naive_dijkstra(&g, s);
        for v in 1..=n {
            match want[v] {
                None => assert!(sp.dist(&g, v).is_err()),
                Some(d) => {
                    assert_eq!(sp.dist(&g, v).unwrap(), d);
                    let p = sp.path(&g, v).unwrap();
                    assert_eq!((p[0], *p.last().unwrap()), (s, v));
                    let len: u64 = p.windows(2).map(|w| g.weight(w[0], g.find_position(w[0], w[1]).unwrap())).sum();
                    assert_eq!(len, d);
                }
            }
        }
    }
}

#[test]
fn connectivity() {
    for seed in 0..20u64 {
        let n = 1 + (seed as usize * 29) % 200;
        let g = gen::undirected(n, n * 2 / 3, seed);
        let c = ConnIndex::build(&g, seed % 2 == 0).unwrap();
        let mut d = Dsu::new(n);
        for (u, v) in g.edges() {
            d.union(u, v);
        }
        let want: Vec<usize> = (0..=n).map(|v| d.find(v)).collect();
        let got: Vec<usize> = std::iter::once(0).chain((1..=n).map(|v| c.label(&g, v).unwrap())).collect();
        assert!(same_partition(&want, &got));
    }
}

#[test]
fn strong_components() {
    for seed in 0..20u64 {
        let n = 1 + (seed as usize * 17) % 150;
        let g = gen::directed(n, n + n / 2, false, seed);
        let s = SccIndex::build(&g, seed % 2 == 1).unwrap();
        let want = tarjan_scc(&g);
        let got: Vec<usize> = std::iter::once(0).chain((1..=n).map(|v| s.label(&g, v).unwrap())).collect();
        assert!(same_partition(&want, &got));
        assert_eq!(s.enumerate().len(), want[1..].iter().collect::<BTreeSet<_>>().len());
    }
}

#[test]
fn biconnected_components() {
    for seed in 0..20u64 {
        let n = 2 + (seed as usize * 11) % 150;
        let g = gen::connected_undirected(n, n + seed as usize % 3 * n / 4, seed);
        let b = BiconIndex::build(&g, seed % 2 == 0).unwrap();
        let (cut, comps) = tarjan_bcc(&g);
        assert!((1..=n).all(|v| b.is_cut(v).unwrap() == cut[v]));
        let mut got: Vec<Vec<(usize, usize)>> = b
            .all_components(&g)
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        got.sort();
        assert_eq!(got, comps);
        for (u, v) in g.edges() {
            let mut c = b.edges_of(&g, u, v).unwrap();
            c.sort_unstable();
            assert!(comps.contains(&c) && c.contains(&edge(u, v)));
        }
    }
}

#[test]
fn two_edge_connectivity() {
    for seed in 0..20u64 {
        let n = 2 + (seed as usize * 7) % 150;
        let g = gen::connected_undirected(n, n + seed as usize % 4 * n / 5, seed);
        let t = TeccIndex::build(&g, seed % 2 == 1).unwrap();
        let want_bridges = common::bridges(&g);
        let mut got = t.bridge_list(&g).unwrap();
        got.sort_unstable();
        assert_eq!(got, want_bridges);
        let comp = two_edge_components(&g);
        let edges = g.edges();
        for &(a, b) in &edges {
            for &(c, d) in &edges {
                let bridge = |e: (usize, usize)| want_bridges.contains(&edge(e.0, e.1));
                let want = if bridge((a, b)) || bridge((c, d)) { edge(a, b) == edge(c, d) } else { comp[a] == comp[c] };
                assert_eq!(t.same(&g, (a, b), (c, d)).unwrap(), want);
            }
        }
        for v in 1..=n {
            let mut vs = t.vertices_of(&g, t.top(&g, v));
            vs.sort_unstable();
            let want: Vec<usize> = (1..=n).filter(|&u| comp[u] == comp[v]).collect();
            assert_eq!(vs, want);
        }
    }
}

#[test]
fn application_domain_errors() {
    let dir = AdjacencyGraph::directed_from_out(vec![vec![2], vec![]]).unwrap();
    let und = AdjacencyGraph::undirected(vec![vec![2], vec![1], vec![]]).unwrap();
    assert!(ConnIndex::build(&dir, false).is_err());
    assert!(SccIndex::build(&und, false).is_err());
    assert!(BiconIndex::build(&und, false).is_err(), "disconnected input");
    assert!(TeccIndex::build(&dir, false).is_err());
    let tri = AdjacencyGraph::undirected(vec![vec![2, 3], vec![1, 3], vec![1, 2]]).unwrap();
    let t = TeccIndex::build(&tri, false).unwrap();
    assert_eq!(t.class_of(&tri, 1, 2).unwrap(), EdgeClass::Component(1));
    let c = ConnIndex::build(&tri, false).unwrap();
    assert!(c.connected(&und, 1, 2).is_err(), "wrong graph");
}
