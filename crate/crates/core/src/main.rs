use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dfs_index::apps::{BiconIndex, ConnIndex, SccIndex, SpIndex, TeccIndex};
use dfs_index::bench::{self, BenchConfig};
use dfs_index::dfsindex::{BuildMode, DfsIndex};
use dfs_index::encindex::EncIndex;
use dfs_index::format::{self, IndexFile, StoredIndex};
use dfs_index::graph::AdjacencyGraph;
use dfs_index::lexdfs::{Answer, DfsQueries, Query};
use dfs_index::{Error, Result};

#[derive(Parser)]
#[command(name = "dfsidx", version, about = "Compact lex-DFS tree indexes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Indexing,
    Encoding,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Plain,
    Compressed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum App {
    None,
    Sp,
    Conn,
    Scc,
    Bicon,
    Tecc,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an index from a graph file and write it.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        source: usize,
        #[arg(long, value_enum, default_value = "indexing")]
        model: Model,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        #[arg(long, default_value_t = dfs_index::encindex::DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "none")]
        app: App,
        #[arg(long)]
        out: PathBuf,
    },
    /// Answer one query from a stored index.
    Query {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        op: String,
        /// Integer arguments, comma or space separated.
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        args: Vec<String>,
    },
    /// Per-section and per-component sizes of a stored index.
    Stats {
        #[arg(long)]
        index: PathBuf,
    },
    /// Time every query kind on seeded random connected graphs.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1024,16384")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2.0)]
        density: f64,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read_graph(path: &Path) -> Result<AdjacencyGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    AdjacencyGraph::parse(&text)
}

fn key_values(rows: &[(String, usize)]) -> String {
    rows.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

fn run(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Build { input, source, model, mode, epsilon, app, out } => {
            let g = read_graph(&input)?;
            let mode = match mode {
                Mode::Auto => BuildMode::Auto,
                Mode::Plain => BuildMode::Plain,
                Mode::Compressed => BuildMode::Compressed,
            };
            let compressed = mode.compresses(g.n(), g.m());
            if app != App::None && matches!(model, Model::Encoding) {
                return Err(Error::Input("applications are built in the indexing model".into()));
            }
            let idx = match (app, model) {
                (App::None, Model::Indexing) => StoredIndex::Indexing(DfsIndex::build(&g, source, mode)?),
                (App::None, Model::Encoding) => StoredIndex::Encoding(EncIndex::build(&g, source, epsilon)?),
                (App::Sp, _) => StoredIndex::Sp(SpIndex::build(&g, source, compressed)?),
                (App::Conn, _) => StoredIndex::Conn(ConnIndex::build(&g, compressed)?),
                (App::Scc, _) => StoredIndex::Scc(SccIndex::build(&g, compressed)?),
                (App::Bicon, _) => StoredIndex::Bicon(BiconIndex::build(&g, compressed)?),
                (App::Tecc, _) => StoredIndex::Tecc(TeccIndex::build(&g, compressed)?),
            };
            format::save(&idx, &out)?;
            Ok(key_values(&idx.space_report()))
        }
        Cmd::Query { index, graph, op, args } => {
            let idx = format::load(&index)?;
            let args = parse_args(&args)?;
            let g = match (&idx, graph) {
                (StoredIndex::Encoding(_), Some(_)) => return Err(Error::Input("encoding model takes no graph".into())),
                (StoredIndex::Encoding(_), None) => None,
                (_, None) => return Err(Error::Input("this index answers queries together with its graph; pass --graph".into())),
                (_, Some(p)) => Some(read_graph(&p)?),
            };
            let ans = query(&idx, g.as_ref(), &op, &args)?;
            Ok(format!("{ans}\n"))
        }
        Cmd::Stats { index } => {
            let bytes = std::fs::read(&index)?;
            let file = IndexFile::from_bytes(&bytes)?;
            let idx = file.index()?;
            let h = file.header;
            let mut out = format!("model={}\nn={}\nm={}\ndirected={}\n", h.model.name(), h.n, h.m, h.directed);
            for (name, bits) in file.section_bits() {
                out.push_str(&format!("section_{name}_bits={bits}\n"));
            }
            out.push_str(&format!("file_bits={}\n", bytes.len() * 8));
            out.push_str(&key_values(&idx.space_report()));
            let total = idx.total_bits() as f64;
            let lg = (usize::BITS - h.n.saturating_sub(1).leading_zeros()).max(1) as f64;
            out.push_str(&format!("bits_per_n_plus_m={:.4}\n", total / (h.n + h.m).max(1) as f64));
            out.push_str(&format!("bits_per_n_lg_n={:.4}\n", total / (h.n as f64 * lg).max(1.0)));
            Ok(out)
        }
        Cmd::Bench { sizes, density, queries, seed } => {
            let rows = bench::run(&BenchConfig { sizes, density, queries, seed })?;
            Ok(bench::format_table(&rows))
        }
    }
}

fn parse_args(raw: &[String]) -> Result<Vec<usize>> {
    raw.iter()
        .flat_map(|s| s.split_whitespace())
        .map(|s| s.parse().map_err(|_| Error::Input(format!("argument {s:?} is not a vertex id"))))
        .collect()
}

fn want(op: &str, args: &[usize], k: usize) -> Result<()> {
    if args.len() != k {
        return Err(Error::Input(format!("operation `{op}` takes {k} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn edges(list: &[(usize, usize)]) -> String {
    list.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

fn unknown(op: &str, model: &str) -> Error {
    Error::Input(format!("operation `{op}` is not available for a {model} index"))
}

fn query(idx: &StoredIndex, g: Option<&AdjacencyGraph>, op: &str, a: &[usize]) -> Result<String> {
    let list = |l: Vec<usize>| Answer::List(l).to_string();
    match idx {
        StoredIndex::Encoding(e) => {
            if op == "subtree-size" {
                want(op, a, 1)?;
                return Ok(e.subtree_size(a[0])?.to_string());
            }
            Ok(e.answer(&Query::parse(op, a)?)?.to_string())
        }
        StoredIndex::Indexing(x) => {
            let v = x.bind(g.expect("graph checked"))?;
            if op == "subtree-size" {
                want(op, a, 1)?;
                return Ok(v.subtree_size(a[0])?.to_string());
            }
            Ok(v.answer(&Query::parse(op, a)?)?.to_string())
        }
        StoredIndex::Sp(x) => {
            let g = g.expect("graph checked");
            match op {
                "dist" => {
                    want(op, a, 1)?;
                    Ok(x.dist(g, a[0])?.to_string())
                }
                "path" => {
                    want(op, a, 1)?;
                    Ok(list(x.path(g, a[0])?))
                }
                _ => Err(unknown(op, "shortest-path")),
            }
        }
        StoredIndex::Conn(x) => {
            let g = g.expect("graph checked");
            match op {
                "connected" => {
                    want(op, a, 2)?;
                    Ok(x.connected(g, a[0], a[1])?.to_string())
                }
                "label" => {
                    want(op, a, 1)?;
                    Ok(x.label(g, a[0])?.to_string())
                }
                "count" => {
                    want(op, a, 0)?;
                    x.shape().check(g)?;
                    Ok(x.component_count().to_string())
                }
                _ => Err(unknown(op, "connectivity")),
            }
        }
        StoredIndex::Scc(x) => {
            let g = g.expect("graph checked");
            match op {
                "same" => {
                    want(op, a, 2)?;
                    Ok(x.same(g, a[0], a[1])?.to_string())
                }
                "label" => {
                    want(op, a, 1)?;
                    Ok(x.label(g, a[0])?.to_string())
                }
                "members" => {
                    want(op, a, 1)?;
                    Ok(list(x.members(g, a[0])?))
                }
                "enumerate" => {
                    want(op, a, 0)?;
                    x.shape().check(g)?;
                    Ok(list(x.enumerate()))
                }
                _ => Err(unknown(op, "strong-component")),
            }
        }
        StoredIndex::Bicon(x) => {
            let g = g.expect("graph checked");
            x.shape().check(g)?;
            match op {
                "is-cut" => {
                    want(op, a, 1)?;
                    Ok(x.is_cut(a[0])?.to_string())
                }
                "cuts" => {
                    want(op, a, 0)?;
                    Ok(list(x.cut_list()))
                }
                "component" => {
                    want(op, a, 2)?;
                    Ok(edges(&x.edges_of(g, a[0], a[1])?))
                }
                "same" => {
                    want(op, a, 4)?;
                    Ok(x.same(g, (a[0], a[1]), (a[2], a[3]))?.to_string())
                }
                "count" => {
                    want(op, a, 0)?;
                    Ok(x.component_count().to_string())
                }
                _ => Err(unknown(op, "biconnectivity")),
            }
        }
        StoredIndex::Tecc(x) => {
            let g = g.expect("graph checked");
            x.shape().check(g)?;
            match op {
                "is-bridge" => {
                    want(op, a, 2)?;
                    Ok(x.is_bridge(g, a[0], a[1])?.to_string())
                }
                "bridges" => {
                    want(op, a, 0)?;
                    Ok(edges(&x.bridge_list(g)?))
                }
                "component" => {
                    want(op, a, 2)?;
                    Ok(edges(&x.edges_of(g, a[0], a[1])?))
                }
                "same" => {
                    want(op, a, 4)?;
                    Ok(x.same(g, (a[0], a[1]), (a[2], a[3]))?.to_string())
                }
                "vertices" => {
                    want(op, a, 1)?;
                    x.shape().vertex(a[0])?;
                    Ok(list(x.vertices_of(g, x.top(g, a[0]))))
                }
                _ => Err(unknown(op, "2-edge-connectivity")),
            }
        }
    }
}
