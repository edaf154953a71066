use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const G6: &str = "6 6 undirected\n2 3\n1 4 5\n1 5\n2\n2 3 6\n5\n";

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfsidx")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Fixture {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Fixture {
    fn new() -> Fixture {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        std::fs::write(root.join("g6.txt"), G6).unwrap();
        Fixture { _dir: dir, root }
    }

    fn path(&self, name: &str) -> String {
        self.root.join(name).to_string_lossy().into_owned()
    }

    fn build(&self, out: &str, extra: &[&str]) -> Output {
        let (g, o) = (self.path("g6.txt"), self.path(out));
        let mut args = vec!["build", "--input", &g, "--out", &o];
        args.extend_from_slice(extra);
        bin(&args)
    }

    fn query(&self, index: &str, graph: bool, op: &str, args: &str) -> Output {
        let (i, g) = (self.path(index), self.path("g6.txt"));
        let mut a = vec!["query", "--index", &i, "--op", op, "--args", args];
        if graph {
            a.extend_from_slice(&["--graph", &g]);
        }
        bin(&a)
    }
}

fn exists(p: &str) -> bool {
    Path::new(p).exists()
}

#[test]
fn build_and_query_indexing_model() {
    let f = Fixture::new();
    let o = f.build("i.idx", &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().any(|l| l == "D_bits=18"));
    assert!(exists(&f.path("i.idx")));
    assert_eq!(stdout(&f.query("i.idx", true, "parent", "3")), "5\n");
    assert_eq!(stdout(&f.query("i.idx", true, "2a", "1")), "none\n");
    assert_eq!(stdout(&f.query("i.idx", true, "children", "5")), "3 6\n");
    assert_eq!(stdout(&f.query("i.idx", true, "1b", "2,6")), "true\n");
    assert_eq!(stdout(&f.query("i.idx", true, "3", "")), "1 2 4 5 3 6\n");
    assert_eq!(stdout(&f.query("i.idx", true, "subtree-size", "2")), "5\n");
    let o = f.query("i.idx", false, "parent", "3");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--graph"));
    assert_eq!(f.query("i.idx", true, "parent", "9").status.code(), Some(2));
    assert_eq!(f.query("i.idx", true, "bogus", "1").status.code(), Some(2));
}

#[test]
fn encoding_model_refuses_graph() {
    let f = Fixture::new();
    let o = f.build("e.idx", &["--model", "encoding", "--epsilon", "0.25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = f.query("e.idx", true, "parent", "3");
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("encoding model takes no graph"));
    assert_eq!(stdout(&f.query("e.idx", false, "2d", "3")), "5\n");
    let stats = stdout(&bin(&["stats", "--index", &f.path("e.idx")]));
    assert!(stats.contains("section_perm_bits=") && stats.contains("section_tree_bits="), "{stats}");
}

#[test]
fn stats_reports_sections_and_ratios() {
    let f = Fixture::new();
    f.build("i.idx", &["--mode", "plain"]);
    let o = bin(&["stats", "--index", &f.path("i.idx")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "D_bits=18"));
    for name in ["D", "E", "P", "D_T", "cover"] {
        assert!(s.contains(&format!("section_{name}_bits=")), "{name}");
    }
    for key in ["bits_per_n_plus_m=", "bits_per_n_lg_n="] {
        let v: f64 = s.lines().find_map(|l| l.strip_prefix(key)).unwrap().parse().unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}

#[test]
fn damaged_files_exit_three() {
    let f = Fixture::new();
    f.build("i.idx", &[]);
    let bytes = std::fs::read(f.path("i.idx")).unwrap();
    std::fs::write(f.path("t.idx"), &bytes[..bytes.len() / 2]).unwrap();
    let o = bin(&["stats", "--index", &f.path("t.idx")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("checksum"));
}

#[test]
fn usage_and_input_errors() {
    let f = Fixture::new();
    assert_eq!(bin(&["build"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    let o = f.build("x.idx", &["--source", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("out of range"));
    std::fs::write(f.path("bad.txt"), "3 1 undirected\n2\n").unwrap();
    let o = bin(&["build", "--input", &f.path("bad.txt"), "--out", &f.path("y.idx")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(bin(&["build", "--input", &f.path("missing.txt"), "--out", &f.path("z.idx")]).status.code(), Some(2));
}

#[test]
fn application_indexes() {
    let f = Fixture::new();
    assert_eq!(f.build("c.idx", &["--app", "conn"]).status.code(), Some(0));
    assert_eq!(stdout(&f.query("c.idx", true, "connected", "1,6")), "true\n");
    assert_eq!(f.build("b.idx", &["--app", "bicon"]).status.code(), Some(0));
    assert_eq!(stdout(&f.query("b.idx", true, "cuts", "")), "2 5\n");
    assert_eq!(f.build("t.idx", &["--app", "tecc"]).status.code(), Some(0));
    assert_eq!(stdout(&f.query("t.idx", true, "bridges", "")), "2-4 5-6\n");
    assert_eq!(f.build("s.idx", &["--app", "sp", "--source", "4"]).status.code(), Some(0));
    assert_eq!(stdout(&f.query("s.idx", true, "dist", "6")), "3\n");
    assert_eq!(stdout(&f.query("s.idx", true, "path", "6")), "4 2 5 6\n");
    assert_eq!(f.build("x.idx", &["--app", "scc"]).status.code(), Some(2), "undirected input");
    assert_eq!(f.query("t.idx", true, "dist", "1").status.code(), Some(2));
}

#[test]
fn bench_lists_every_kind() {
    let o = bin(&["bench", "--sizes", "256", "--queries", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for model in ["indexing", "encoding"] {
        for q in ["1a", "1b", "2a", "2b", "2c", "2d", "3", "4"] {
            assert!(s.lines().any(|l| l.starts_with(&format!("{model}\t256\t{q}\t"))), "{model} {q}");
        }
    }
}
