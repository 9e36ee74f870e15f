use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cbp_core::num::parse_rational;
use cbp_core::toric::TriangulationReport;
use cbp_core::*;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Exact computations on the connected blocks polytope of a graph.
#[derive(Parser)]
#[command(name = "cbp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GraphArg {
    /// Edge-list or JSON graph file; `-` reads stdin.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Eulerian,
    Tree,
}

#[derive(Subcommand)]
enum Command {
    /// Blocks, cut vertices, block-cut tree and graph class.
    Blocks(GraphArg),
    /// Connected block subsets in canonical order.
    Vertices(GraphArg),
    /// The facet description, one row per facet.
    Facets(GraphArg),
    /// Adjacency lists of the polytope graph.
    Edges {
        #[command(flatten)]
        g: GraphArg,
        /// Also compute adjacency from tight facets and compare.
        #[arg(long)]
        check: bool,
    },
    /// Diameter, dimension, facet count and the Hirsch bound.
    Diameter(GraphArg),
    /// Ehrhart polynomial, h*-vector and its properties.
    Hstar {
        #[command(flatten)]
        g: GraphArg,
        /// Refuse graphs whose dimension exceeds this.
        #[arg(long, default_value_t = 6)]
        max_dilation: usize,
    },
    /// Quadratic binomial basis of the toric ideal, verified.
    Groebner {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, default_value_t = 4)]
        groebner_max_blocks: usize,
    },
    /// Unimodular triangulation from the initial ideal.
    Triangulate {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, default_value_t = 4)]
        groebner_max_blocks: usize,
    },
    /// Maximum-weight connected block subset.
    Optimize {
        #[command(flatten)]
        g: GraphArg,
        /// One rational per block in canonical order.
        #[arg(long, conflicts_with = "edge_weights", required_unless_present = "edge_weights")]
        weights: Option<PathBuf>,
        /// One rational per edge in input order; needs --mode.
        #[arg(long, requires = "mode")]
        edge_weights: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Full verification sweep over the generated corpus.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_blocks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_dilation: usize,
        #[arg(long, default_value_t = 4)]
        groebner_max_blocks: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// The deterministic test corpus.
    Corpus {
        #[arg(long, default_value_t = 6)]
        max_blocks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<CbpError> for Failure {
    fn from(e: CbpError) -> Self {
        match e {
            CbpError::Parse { .. }
            | CbpError::InvalidGraph(_)
            | CbpError::NotConnected
            | CbpError::EmptyGraph
            | CbpError::DimensionMismatch { .. }
            | CbpError::NotTree
            | CbpError::NotEulerianCactus => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let out = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    };
    out.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(g: &GraphArg) -> Result<BlockDecomposition, Failure> {
    let graph = parse_graph(&read_input(&g.graph)?)?;
    Ok(block_decomposition(&graph)?)
}

fn read_weights(path: &Path) -> Result<Vec<Rational>, Failure> {
    read_input(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            parse_rational(l).ok_or_else(|| Failure::Usage(format!("{}:{}: bad rational `{l}`", path.display(), i + 1)))
        })
        .collect()
}

fn block_cap(d: &BlockDecomposition, cap: usize) -> Result<(), Failure> {
    if d.block_count() > cap {
        return Err(CbpError::DimensionCap {
            dim: d.block_count(),
            cap,
        }
        .into());
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn subsets(v: &[BlockSubset]) -> Value {
    to_json(&v.iter().map(|s| s.members().to_vec()).collect::<Vec<_>>())
}

fn run(cmd: Command) -> Result<Value, Failure> {
    Ok(match cmd {
        Command::Blocks(g) => {
            let d = load(&g)?;
            let tree = block_cut_tree(&d);
            json!({
                "blocks": d.blocks(),
                "cut_vertices": d.cut_vertices(),
                "tree": { "nodes": tree.nodes(), "edges": tree.edges() },
                "class": blocks::classify_decomposition(&d),
            })
        }
        Command::Vertices(g) => subsets(&enumerate_vertices(&load(&g)?)?),
        Command::Facets(g) => to_json(&facet_rows(&load(&g)?)?),
        Command::Edges { g, check } => {
            let d = load(&g)?;
            let pg = polytope_graph(&d)?;
            if check && polytope_graph_geometric(&d, &h_representation(&d)?)? != pg {
                return Err(Failure::Check("combinatorial and geometric adjacency differ".into()));
            }
            json!({ "vertices": subsets(&pg.vertices), "adjacency": pg.adjacency_lists() })
        }
        Command::Diameter(g) => {
            let d = load(&g)?;
            to_json(&hirsch_check(&d, &polytope_graph(&d)?, &h_representation(&d)?)?)
        }
        Command::Hstar { g, max_dilation } => {
            let d = load(&g)?;
            block_cap(&d, max_dilation)?;
            let h = h_representation(&d)?;
            let profile = hstar_profile(&d, &h)?;
            hstar_checks(&profile, &d, &h)?;
            to_json(&profile)
        }
        Command::Groebner { g, groebner_max_blocks } => {
            let d = load(&g)?;
            block_cap(&d, groebner_max_blocks)?;
            let (order, basis) = groebner_candidates(&d)?;
            if !buchberger_verify(&basis, &order)? {
                return Err(Failure::Check("an S-polynomial does not reduce to zero".into()));
            }
            let binomials: Vec<_> = basis.iter().map(|b| b.labeled(&order)).collect();
            json!({ "order": order, "binomials": binomials })
        }
        Command::Triangulate { g, groebner_max_blocks } => {
            let d = load(&g)?;
            block_cap(&d, groebner_max_blocks)?;
            let (order, basis) = groebner_candidates(&d)?;
            let c = triangulation(&d, &basis, &order)?;
            let report: TriangulationReport = triangulation_checks(&c, &hstar_profile(&d, &h_representation(&d)?)?)?;
            json!({
                "ground": subsets(&c.ground),
                "maximal_faces": c.maximal_faces,
                "minimal_non_faces": c.minimal_non_faces,
                "f_vector": report.f_vector,
                "h_vector": report.h_vector,
            })
        }
        Command::Optimize {
            g,
            weights,
            edge_weights,
            mode,
        } => {
            let d = load(&g)?;
            let out = match (weights, edge_weights, mode) {
                (Some(w), _, _) => {
                    let s = max_weight_connected_blockset(&d, &read_weights(&w)?)?;
                    optimize::EdgeSolution {
                        edges: d.edges_of(&s.blocks),
                        blocks: s.blocks,
                        value: s.value,
                    }
                }
                (None, Some(w), Some(Mode::Eulerian)) => eulerian_adapter(&d, &read_weights(&w)?)?,
                (None, Some(w), Some(Mode::Tree)) => tree_adapter(&d, &read_weights(&w)?)?,
                _ => return Err(Failure::Usage("pass --weights, or --edge-weights with --mode".into())),
            };
            to_json(&out)
        }
        Command::Verify {
            max_blocks,
            seed,
            max_dilation,
            groebner_max_blocks,
            trials,
        } => {
            let cfg = VerifyConfig {
                max_dilation,
                groebner_max_blocks,
                optimizer_trials: trials,
                seed,
            };
            let reports = verify_corpus(&corpus(max_blocks, seed), &cfg);
            let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed()).collect();
            for r in &failed {
                log::error!("{} failed {:?}", r.id, r.failures());
            }
            log::info!("verified {} graphs, {} failed", reports.len(), failed.len());
            let out = json!({
                "config": cfg,
                "graphs": reports.len(),
                "all_pass": failed.is_empty(),
                "reports": reports,
            });
            if !failed.is_empty() {
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
                return Err(Failure::Check(format!("{} graphs failed verification", failed.len())));
            }
            out
        }
        Command::Corpus { max_blocks, seed } => to_json(&corpus(max_blocks, seed)),
    })
}

fn configure_threads() {
    let Ok(raw) = std::env::var("CBP_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring CBP_THREADS={raw}"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    configure_threads();
    match run(cli.command) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
