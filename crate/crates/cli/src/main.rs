//! Command-line front end: generate graphs, run the exact solver and the
//! certified constructions, verify edge sets and covers, and emit
//! machine-readable JSON results.
//!
//! Exit codes: 0 on success (solver status optimal), 2 when a budget was
//! hit (value is a bound, not the answer), 3 on input or guard errors.

#![forbid(unsafe_code)]

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gpe_core::constructions::{
    classify_grid_edges, greedy_ipe_upper, grid_cover, hypercube_cover, pendant_edge_witness,
    two_theta_class_witness, verify_cover, CoverCertificate, EdgeClass,
};
use gpe_core::generators::{generate, recognize_grid, FamilyDescriptor, TreeSpec};
use gpe_core::geodesy::first_violation;
use gpe_core::graph::{all_pairs_distances, DistanceMatrix, EdgeSet, Graph};
use gpe_core::solver::{enumerate_optima, gpe_exact, Budget, SolveStatus};
use gpe_core::theta::theta_classes;

use gpe_cli::dot::graph_dot;
use gpe_cli::io::{
    edge_set_pairs, read_edge_set, read_graph, write_graph, GraphSummary, RunResult,
};

#[derive(Parser)]
#[command(
    name = "gpe",
    version,
    about = "Edge general position sets: generate, solve, verify, certify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report elapsed_ms as 0 for byte-reproducible output
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph family in the JSON graph format
    Gen(GenArgs),
    /// Exact edge k-general position number of a graph file
    Gpe(GpeArgs),
    /// Check an edge set (from a file or a construction) for general position
    Verify(VerifyArgs),
    /// Theta classes and partial cube recognition
    Theta(ThetaArgs),
    /// Isometric path edge covers and the implied upper bound
    Cover(CoverArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a DOT rendering
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Path on n vertices
    Path { n: usize },
    /// Cycle on n vertices
    Cycle { n: usize },
    /// Complete graph on n vertices
    Complete { n: usize },
    /// Star K_{1,n}
    Star { n: usize },
    /// r-dimensional hypercube
    Hypercube { r: usize },
    /// Cartesian product of paths on r and s vertices
    Grid { r: usize, s: usize },
    /// The builtin 12-vertex partial cube worked example
    Fig1,
    /// Tree from a Pruefer sequence or a seeded random one
    Tree(TreeArgs),
    /// Cartesian product of two compact family specs, e.g. path:5 cycle:4
    Product { a: String, b: String },
}

#[derive(Args)]
struct TreeArgs {
    /// Comma-separated Pruefer sequence (empty for the 2-vertex tree)
    #[arg(long, conflicts_with = "random")]
    pruefer: Option<String>,
    /// Uniform random tree on this many vertices
    #[arg(long)]
    random: Option<usize>,
    /// RNG seed for --random
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GpeArgs {
    /// Graph file ("-" for stdin)
    graph: PathBuf,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Also enumerate every optimum
    #[arg(long)]
    enumerate: bool,
    #[arg(long, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Wall-clock cap; 0 disables it
    #[arg(long, default_value_t = 60)]
    budget_seconds: u64,
    /// Write a DOT rendering with the witness highlighted
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file ("-" for stdin)
    graph: PathBuf,
    /// Edge set file: a JSON array of [u, v] pairs
    edges: Option<PathBuf>,
    /// Take the edge set from a construction instead of a file
    #[arg(long, value_enum, conflicts_with = "edges")]
    witness_from: Option<WitnessSource>,
    /// Theta class indices for two-theta-classes
    #[arg(long, default_value = "0,1")]
    classes: String,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Write a DOT rendering with the edge set highlighted
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessSource {
    /// Semi-boundary edges of a canonical grid
    SemiBoundary,
    /// Pendant edges of a tree
    PendantEdges,
    /// Union of two theta classes of a partial cube
    TwoThetaClasses,
    /// Every edge of the graph
    AllEdges,
}

#[derive(Args)]
struct ThetaArgs {
    /// Graph file ("-" for stdin)
    graph: PathBuf,
    /// Write a DOT rendering colored by class
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    #[command(subcommand)]
    target: CoverTarget,
}

#[derive(Subcommand)]
enum CoverTarget {
    /// Recursive cover of the r-cube (r >= 2)
    Hypercube { r: usize },
    /// The r+s-4 path cover of a grid (r, s >= 6); greedy fallback below
    Grid { r: usize, s: usize },
    /// Greedy cover of an arbitrary graph file
    File { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Gpe(args) => cmd_gpe(args, cli.no_timing),
        Command::Verify(args) => cmd_verify(args, cli.no_timing),
        Command::Theta(args) => cmd_theta(args, cli.no_timing),
        Command::Cover(args) => cmd_cover(args, cli.no_timing),
    }
}

// -- shared plumbing --

fn load_graph(path: &Path) -> Result<Graph, String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        read_graph(buf.as_bytes()).map_err(|e| e.to_string())
    } else {
        let file = fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
        read_graph(file).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn write_output(path: &Path, content: &str) -> Result<(), String> {
    fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
}

fn elapsed_ms(t0: Instant, suppress: bool) -> u64 {
    if suppress {
        0
    } else {
        t0.elapsed().as_millis() as u64
    }
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

/// Compact family spec for products: `name[:arg[:arg]]`.
fn parse_compact_family(s: &str) -> Result<FamilyDescriptor, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let arg = |i: usize| -> Result<usize, String> {
        parts
            .get(i)
            .ok_or_else(|| format!("{s}: missing argument"))?
            .parse()
            .map_err(|e| format!("{s}: {e}"))
    };
    match (parts[0], parts.len()) {
        ("path", 2) => Ok(FamilyDescriptor::Path(arg(1)?)),
        ("cycle", 2) => Ok(FamilyDescriptor::Cycle(arg(1)?)),
        ("complete", 2) => Ok(FamilyDescriptor::Complete(arg(1)?)),
        ("star", 2) => Ok(FamilyDescriptor::Star(arg(1)?)),
        ("hypercube", 2) => Ok(FamilyDescriptor::Hypercube(arg(1)?)),
        ("grid", 3) => Ok(FamilyDescriptor::Grid(arg(1)?, arg(2)?)),
        ("fig1", 1) => Ok(FamilyDescriptor::Fig1),
        _ => Err(format!(
            "{s}: expected name:args with name in path/cycle/complete/star/hypercube/grid/fig1"
        )),
    }
}

// -- commands --

fn cmd_gen(args: GenArgs) -> Result<u8, String> {
    let graph = match &args.family {
        GenFamily::Path { n } => generate(&FamilyDescriptor::Path(*n)),
        GenFamily::Cycle { n } => generate(&FamilyDescriptor::Cycle(*n)),
        GenFamily::Complete { n } => generate(&FamilyDescriptor::Complete(*n)),
        GenFamily::Star { n } => generate(&FamilyDescriptor::Star(*n)),
        GenFamily::Hypercube { r } => generate(&FamilyDescriptor::Hypercube(*r)),
        GenFamily::Grid { r, s } => generate(&FamilyDescriptor::Grid(*r, *s)),
        GenFamily::Fig1 => generate(&FamilyDescriptor::Fig1),
        GenFamily::Tree(tree) => match (&tree.pruefer, tree.random) {
            (Some(seq), None) => {
                let seq = parse_usize_list(seq)?;
                generate(&FamilyDescriptor::Tree(TreeSpec::Pruefer(seq)))
            }
            (None, Some(n)) => {
                if n < 2 {
                    return Err("random tree needs n >= 2".to_owned());
                }
                let mut rng = ChaCha8Rng::seed_from_u64(tree.seed);
                let seq: Vec<usize> = (0..n.saturating_sub(2))
                    .map(|_| rng.random_range(0..n))
                    .collect();
                generate(&FamilyDescriptor::Tree(TreeSpec::Pruefer(seq)))
                    .map(|g| g.with_name(format!("tree(random,n={n},seed={})", tree.seed)))
            }
            (None, None) => return Err("tree needs --pruefer or --random".to_owned()),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        },
        GenFamily::Product { a, b } => {
            let fa = parse_compact_family(a)?;
            let fb = parse_compact_family(b)?;
            generate(&FamilyDescriptor::Product(Box::new(fa), Box::new(fb)))
        }
    }
    .map_err(|e| e.to_string())?;

    let json = write_graph(&graph);
    match &args.out {
        Some(path) => write_output(path, &json)?,
        None => print!("{json}"),
    }
    if let Some(path) = &args.dot {
        write_output(path, &graph_dot(&graph, None, None))?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct GpePayload {
    k: usize,
    value: usize,
    status: &'static str,
    lower_bound: usize,
    upper_bound: usize,
    nodes_explored: u64,
    witness: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optima: Option<Vec<Vec<(usize, usize)>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumeration_complete: Option<bool>,
}

fn cmd_gpe(args: GpeArgs, no_timing: bool) -> Result<u8, String> {
    let g = load_graph(&args.graph)?;
    let d = all_pairs_distances(&g);

    let deadline = (args.budget_seconds > 0)
        .then(|| Instant::now() + Duration::from_secs(args.budget_seconds));
    let stop: Box<dyn Fn() -> bool> = match deadline {
        Some(t) => Box::new(move || Instant::now() >= t),
        None => Box::new(|| false),
    };
    let budget = Budget::with_stop(args.budget_nodes, &*stop);

    let t0 = Instant::now();
    let report = gpe_exact(&g, &d, args.k, &budget).map_err(|e| e.to_string())?;
    let mut limited = report.status == SolveStatus::LowerBoundOnly;

    let (optima, enumeration_complete) = if args.enumerate {
        let en = enumerate_optima(&g, &d, args.k, &budget).map_err(|e| e.to_string())?;
        limited = limited || !en.complete;
        let sets: Vec<Vec<(usize, usize)>> =
            en.optima.iter().map(|s| edge_set_pairs(&g, s)).collect();
        (Some(sets), Some(en.complete))
    } else {
        (None, None)
    };

    let payload = GpePayload {
        k: report.k,
        value: report.value,
        status: match report.status {
            SolveStatus::Optimal => "optimal",
            SolveStatus::LowerBoundOnly => "lower-bound-only",
        },
        lower_bound: report.lower_bound,
        upper_bound: report.upper_bound,
        nodes_explored: report.nodes_explored,
        witness: edge_set_pairs(&g, &report.witness),
        optima,
        enumeration_complete,
    };
    let result = RunResult {
        command: "gpe".to_owned(),
        graph: GraphSummary::of(&g),
        payload,
        elapsed_ms: elapsed_ms(t0, no_timing),
    };
    print!("{}", result.to_json());
    if let Some(path) = &args.dot {
        write_output(path, &graph_dot(&g, Some(&report.witness), None))?;
    }
    Ok(if limited { 2 } else { 0 })
}

#[derive(Serialize)]
struct VerifyPayload {
    k: usize,
    witness_size: usize,
    ok: bool,
    violation: Option<Vec<(usize, usize)>>,
}

fn cmd_verify(args: VerifyArgs, no_timing: bool) -> Result<u8, String> {
    let g = load_graph(&args.graph)?;
    let d = all_pairs_distances(&g);

    let witness = match (&args.edges, args.witness_from) {
        (Some(path), None) => {
            let file = fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
            read_edge_set(file, &g).map_err(|e| e.to_string())?
        }
        (None, Some(source)) => construction_witness(&g, &d, source, &args.classes)?,
        (None, None) => return Err("need an edge set file or --witness-from".to_owned()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };

    let t0 = Instant::now();
    let violation = first_violation(&g, &d, &witness, args.k).map_err(|e| e.to_string())?;
    let payload = VerifyPayload {
        k: args.k,
        witness_size: witness.len(),
        ok: violation.is_none(),
        violation: violation.map(|t| t.into_iter().map(|e| g.edge(e)).collect()),
    };
    let result = RunResult {
        command: "verify".to_owned(),
        graph: GraphSummary::of(&g),
        payload,
        elapsed_ms: elapsed_ms(t0, no_timing),
    };
    print!("{}", result.to_json());
    if let Some(path) = &args.dot {
        write_output(path, &graph_dot(&g, Some(&witness), None))?;
    }
    Ok(0)
}

fn construction_witness(
    g: &Graph,
    d: &DistanceMatrix,
    source: WitnessSource,
    classes: &str,
) -> Result<EdgeSet, String> {
    match source {
        WitnessSource::SemiBoundary => {
            let (r, s) = recognize_grid(g).ok_or("semi-boundary needs a canonical grid graph")?;
            let classification = classify_grid_edges(r, s).map_err(|e| e.to_string())?;
            Ok(classification.set_of(EdgeClass::SemiBoundary))
        }
        WitnessSource::PendantEdges => pendant_edge_witness(g).map_err(|e| e.to_string()),
        WitnessSource::TwoThetaClasses => {
            let idx = parse_usize_list(classes)?;
            if idx.len() != 2 {
                return Err("--classes expects two indices, e.g. 0,1".to_owned());
            }
            let p = theta_classes(g, d);
            two_theta_class_witness(&p, idx[0], idx[1]).map_err(|e| e.to_string())
        }
        WitnessSource::AllEdges => Ok(EdgeSet::full(g)),
    }
}

#[derive(Serialize)]
struct ThetaPayload {
    is_partial_cube: bool,
    class_count: usize,
    classes: Vec<Vec<usize>>,
}

fn cmd_theta(args: ThetaArgs, no_timing: bool) -> Result<u8, String> {
    let g = load_graph(&args.graph)?;
    let d = all_pairs_distances(&g);
    let t0 = Instant::now();
    let p = theta_classes(&g, &d);
    let payload = ThetaPayload {
        is_partial_cube: p.is_partial_cube,
        class_count: p.classes.len(),
        classes: p.classes.iter().map(|c| c.ids().to_vec()).collect(),
    };
    let result = RunResult {
        command: "theta".to_owned(),
        graph: GraphSummary::of(&g),
        payload,
        elapsed_ms: elapsed_ms(t0, no_timing),
    };
    print!("{}", result.to_json());
    if let Some(path) = &args.dot {
        write_output(path, &graph_dot(&g, None, Some(&p)))?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct CoverPayload {
    method: &'static str,
    path_count: usize,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect: Option<String>,
    gpe_upper_bound: usize,
    paths: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    endpoint_bipartition_side: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn cmd_cover(args: CoverArgs, no_timing: bool) -> Result<u8, String> {
    let t0 = Instant::now();
    let (g, cert, method, note): (Graph, CoverCertificate, &'static str, Option<String>) =
        match &args.target {
            CoverTarget::Hypercube { r } => {
                let g = generate(&FamilyDescriptor::Hypercube(*r)).map_err(|e| e.to_string())?;
                match hypercube_cover(*r) {
                    Ok(cert) => (g, cert, "hypercube-construction", None),
                    Err(e) => {
                        let d = all_pairs_distances(&g);
                        let cert = greedy_ipe_upper(&g, &d);
                        (g, cert, "greedy", Some(format!("{e}; greedy cover used")))
                    }
                }
            }
            CoverTarget::Grid { r, s } => {
                let g = generate(&FamilyDescriptor::Grid(*r, *s)).map_err(|e| e.to_string())?;
                match grid_cover(*r, *s) {
                    Ok(cert) => (g, cert, "grid-construction", None),
                    Err(e) => {
                        let d = all_pairs_distances(&g);
                        let cert = greedy_ipe_upper(&g, &d);
                        (g, cert, "greedy", Some(format!("{e}; greedy cover used")))
                    }
                }
            }
            CoverTarget::File { path } => {
                let g = load_graph(path)?;
                let d = all_pairs_distances(&g);
                let cert = greedy_ipe_upper(&g, &d);
                (g, cert, "greedy", None)
            }
        };

    let d = all_pairs_distances(&g);
    let (verified, defect) = match verify_cover(&g, &d, &cert) {
        Ok(()) => (true, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let payload = CoverPayload {
        method,
        path_count: cert.path_count(),
        verified,
        defect,
        gpe_upper_bound: 2 * cert.path_count(),
        paths: cert.paths.iter().map(|p| p.vertices.clone()).collect(),
        endpoint_bipartition_side: cert.endpoint_bipartition_side.clone(),
        note,
    };
    let result = RunResult {
        command: "cover".to_owned(),
        graph: GraphSummary::of(&g),
        payload,
        elapsed_ms: elapsed_ms(t0, no_timing),
    };
    print!("{}", result.to_json());
    Ok(0)
}
