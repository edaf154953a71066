use dfs_index::apps::{BiconIndex, ConnIndex, SccIndex, SpIndex, TeccIndex};
use dfs_index::dfsindex::{BuildMode, DfsIndex};
use dfs_index::encindex::EncIndex;
use dfs_index::format::{self, StoredIndex};
use dfs_index::gen;
use dfs_index::lexdfs::{all_queries, oracle_dfs, DfsQueries};
use dfs_index::Error;

#[test]
fn save_load_query_and_resave() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.idx");
    for seed in 0..6u64 {
        let n = 10 + seed as usize * 9;
        let u = gen::connected_undirected(n, 3 * n, seed);
        let d = gen::directed(n, 3 * n, seed % 2 == 0, seed);
        let all = [
            StoredIndex::Indexing(DfsIndex::build(&u, 1, BuildMode::Plain).unwrap()),
            StoredIndex::Indexing(DfsIndex::build(&d, 2, BuildMode::Compressed).unwrap()),
            StoredIndex::Encoding(EncIndex::build(&d, 1, 0.25).unwrap()),
            StoredIndex::Encoding(EncIndex::build(&u, 3, 0.5).unwrap()),
            StoredIndex::Sp(SpIndex::build(&gen::weighted(u.clone(), 9, seed), 1, false).unwrap()),
            StoredIndex::Conn(ConnIndex::build(&u, true).unwrap()),
            StoredIndex::Scc(SccIndex::build(&d, false).unwrap()),
            StoredIndex::Bicon(BiconIndex::build(&u, true).unwrap()),
            StoredIndex::Tecc(TeccIndex::build(&u, false).unwrap()),
        ];
        for idx in &all {
            format::save(idx, &path).unwrap();
            let first = std::fs::read(&path).unwrap();
            let back = format::load(&path).unwrap();
            assert_eq!(&back, idx);
            format::save(&back, &path).unwrap();
            assert_eq!(std::fs::read(&path).unwrap(), first);
        }
        let (StoredIndex::Indexing(a), StoredIndex::Indexing(b)) = (&all[0], format::from_bytes(&format::to_bytes(&all[0])).unwrap()) else {
            unreachable!()
        };
        let r = oracle_dfs(&u, 1).unwrap();
        let (va, vb) = (a.bind(&u).unwrap(), b.bind(&u).unwrap());
        for q in all_queries(&r) {
            assert_eq!(va.answer(&q).unwrap(), vb.answer(&q).unwrap());
        }
    }
}

#[test]
fn corrupt_files_are_rejected() {
    let g = gen::connected_undirected(50, 120, 1);
    let bytes = format::to_bytes(&StoredIndex::Indexing(DfsIndex::build(&g, 1, BuildMode::Auto).unwrap()));
    for cut in [9, 100, bytes.len() - 9, bytes.len() - 1] {
        assert!(matches!(format::from_bytes(&bytes[..cut]), Err(Error::Corrupt(_))));
    }
    let mut bad = bytes.clone();
    bad[0] = b'X';
    assert!(format::from_bytes(&bad).unwrap_err().to_string().contains("magic"));
    let missing = tempfile::tempdir().unwrap().path().join("nope.idx");
    assert!(matches!(format::load(&missing), Err(Error::Io(_))));
}
