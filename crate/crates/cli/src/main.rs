mod sweep;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use antimagic_core::corona::CoronaOptions;
use antimagic_core::constructions::construct_with;
use antimagic_core::labeling::provenance;
use antimagic_core::solver::{exact_chi_la_with, DEFAULT_MAX_SIZE};
use antimagic_core::{
    build_graph, find_labeling_with_color_budget, make_certificate, predicted, Certificate,
    ConstructionError, EdgeLabeling, FamilySpec, Graph, SearchBudget,
};
use clap::{Args, Parser, Subcommand};

/// Exit codes are part of the interface.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const MALFORMED: u8 = 2;
    pub const CONSTRUCTION: u8 = 3;
    pub const INVALID_LABELING: u8 = 4;
    pub const SOLVER_REFUSED: u8 = 5;
}

/// A failure carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::new(exit::FAILURE, format!("{e:#}"))
    }
}

type CmdResult = Result<u8, Failure>;

#[derive(Parser)]
#[command(name = "antimagic", version, about = "Construct, verify and search local antimagic labelings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the family construction and write its certificate.
    Construct {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fail instead of searching when no explicit construction applies.
        #[arg(long)]
        no_fallback: bool,
    },
    /// Check a certificate, or an edge list with a label list.
    Verify {
        #[arg(long, conflicts_with_all = ["graph", "labels"])]
        cert: Option<PathBuf>,
        #[arg(long, requires = "labels")]
        graph: Option<PathBuf>,
        /// Comma-separated labels in edge order, or a file containing them.
        #[arg(long, requires = "graph")]
        labels: Option<String>,
    },
    /// Compute chi_la exactly, or look for a labeling within a colour target.
    Solve {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Only search for a labeling with at most this many colours.
        #[arg(long)]
        target: Option<usize>,
        /// Worker threads for the search; 1 is sequential.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the predicted value for a family instance.
    Predict {
        #[arg(long)]
        spec: String,
    },
    /// Construct, verify, predict and solve over a parameter grid; CSV output.
    Sweep(sweep::SweepArgs),
    /// Write the graph in DOT format.
    ExportDot {
        #[arg(long)]
        spec: String,
        /// Put the construction's labels on the edges.
        #[arg(long)]
        labeled: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    #[arg(long)]
    spec: Option<String>,
    /// Edge list: header `p <n> <q>` then one `u v` line per edge, 1-based.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct BudgetArgs {
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    /// Search node limit.
    #[arg(long, default_value_t = 2_000_000_000)]
    pub nodes: u64,
    /// Largest edge count the solver accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
    pub max_size: usize,
    /// Disable pendant symmetry breaking.
    #[arg(long)]
    pub no_symmetry: bool,
}

impl BudgetArgs {
    /// `jobs > 1` splits each search across that many threads.
    pub fn to_budget(&self, jobs: usize) -> Result<SearchBudget, Failure> {
        if !self.budget.is_finite() || self.budget <= 0.0 {
            return Err(Failure::new(exit::MALFORMED, "--budget must be a positive number of seconds"));
        }
        let b = SearchBudget::new(self.nodes, Duration::from_secs_f64(self.budget))
            .map_err(|e| Failure::new(exit::MALFORMED, e.to_string()))?
            .with_max_size(self.max_size)
            .with_symmetry(!self.no_symmetry);
        Ok(if jobs > 1 { b.with_parallel(jobs) } else { b })
    }
}

pub fn parse_spec(text: &str) -> Result<FamilySpec, Failure> {
    text.parse()
        .map_err(|e| Failure::new(exit::MALFORMED, format!("bad spec {text:?}: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse_edge_list(&read(path)?)
        .map_err(|e| Failure::new(exit::MALFORMED, format!("{}: {e}", path.display())))
}

fn parse_labels(arg: &str) -> Result<Vec<u32>, Failure> {
    let text = if Path::new(arg).is_file() {
        read(Path::new(arg))?
    } else {
        arg.to_string()
    };
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Failure::new(exit::MALFORMED, format!("bad label {t:?}")))
        })
        .collect()
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        None => print_stdout(text),
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error.
pub fn print_stdout(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{}", text.trim_end()).and_then(|_| out.flush());
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("outputs always serialise")
}

fn cmd_construct(spec: &str, out: Option<&Path>, no_fallback: bool) -> CmdResult {
    let spec = parse_spec(spec)?;
    let options = CoronaOptions {
        fallback: !no_fallback,
        ..CoronaOptions::default()
    };
    let cert = construct_with(&spec, &options).map_err(|e| {
        let kind = match e {
            ConstructionError::Unsupported(_) => "no construction",
            _ => "construction failed",
        };
        Failure::new(exit::CONSTRUCTION, format!("{kind}: {e}"))
    })?;
    emit(&cert.to_json(), out)?;
    if cert.valid {
        Ok(exit::OK)
    } else {
        eprintln!("construction for {spec} is not local antimagic");
        Ok(exit::INVALID_LABELING)
    }
}

fn cmd_verify(cert: Option<&Path>, graph: Option<&Path>, labels: Option<&str>) -> CmdResult {
    let (g, f, spec, recorded) = match (cert, graph, labels) {
        (Some(path), _, _) => {
            let cert = Certificate::from_json(&read(path)?)
                .map_err(|e| Failure::new(exit::MALFORMED, format!("{}: {e}", path.display())))?;
            let Some(text) = cert.spec.clone() else {
                return Err(Failure::new(
                    exit::MALFORMED,
                    "certificate has no spec; use --graph with --labels instead",
                ));
            };
            let g = build_graph(&parse_spec(&text)?);
            let f = cert
                .labeling()
                .map_err(|e| Failure::new(exit::MALFORMED, e.to_string()))?;
            (g, f, Some(text), Some(cert))
        }
        (None, Some(path), Some(labels)) => {
            let g = read_graph(path)?;
            let f = EdgeLabeling::new(parse_labels(labels)?)
                .map_err(|e| Failure::new(exit::MALFORMED, e.to_string()))?;
            (g, f, None, None)
        }
        _ => return Err(Failure::new(exit::MALFORMED, "give --cert, or --graph with --labels")),
    };
    let prov = recorded.as_ref().map_or(provenance::EXTERNAL, |c| c.provenance.as_str());
    let fresh = make_certificate(&g, &f, spec.as_deref(), prov)
        .map_err(|e| Failure::new(exit::MALFORMED, e.to_string()))?;
    print_stdout(&fresh.to_json());
    if let Some(recorded) = recorded {
        if !recorded.recheck(&g).unwrap_or(false) {
            eprintln!("recorded fields disagree with the recomputed certificate");
            return Ok(exit::MALFORMED);
        }
    }
    if fresh.valid {
        eprintln!("valid: c = {}", fresh.c);
        Ok(exit::OK)
    } else {
        let pairs: Vec<String> = fresh.violations.iter().map(|[a, b]| format!("{a}-{b}")).collect();
        eprintln!("invalid: equal sums on {}", pairs.join(", "));
        Ok(exit::INVALID_LABELING)
    }
}

fn cmd_solve(input: &GraphInput, budget: &BudgetArgs, target: Option<usize>, jobs: usize) -> CmdResult {
    let (g, spec) = match (&input.spec, &input.graph) {
        (Some(text), _) => {
            let spec = parse_spec(text)?;
            (build_graph(&spec), Some(spec))
        }
        (None, Some(path)) => (read_graph(path)?, None),
        (None, None) => unreachable!("clap requires one input"),
    };
    let budget = budget.to_budget(jobs)?;
    let refused = |e: antimagic_core::solver::SolverError| Failure::new(exit::SOLVER_REFUSED, e.to_string());
    match target {
        Some(c) => {
            let spec_text = spec.as_ref().map(|s| s.to_string());
            let out = match find_labeling_with_color_budget(&g, c, &budget) {
                Ok(found) => {
                    let witness = found.map(|f| {
                        make_certificate(&g, &f, spec_text.as_deref(), provenance::SOLVER)
                            .expect("solver labelings fit the graph")
                    });
                    serde_json::json!({ "target": c, "status": "complete", "found": witness.is_some(), "witness": witness })
                }
                Err(antimagic_core::solver::SolverError::BudgetExhausted { nodes }) => {
                    serde_json::json!({ "target": c, "status": "timeout", "found": false, "nodes": nodes })
                }
                Err(e) => return Err(refused(e)),
            };
            print_stdout(&json(&out));
        }
        None => {
            let result = exact_chi_la_with(&g, spec.as_ref(), None, &budget).map_err(refused)?;
            print_stdout(&json(&result));
        }
    }
    Ok(exit::OK)
}

fn cmd_predict(spec: &str) -> CmdResult {
    let spec = parse_spec(spec)?;
    let p = predicted(&spec).map_err(|e| Failure::new(exit::CONSTRUCTION, e.to_string()))?;
    print_stdout(&json(&p));
    Ok(exit::OK)
}

fn cmd_export_dot(spec: &str, labeled: bool, out: Option<&Path>) -> CmdResult {
    let spec = parse_spec(spec)?;
    let g = build_graph(&spec);
    let labels = if labeled {
        let cert = construct_with(&spec, &CoronaOptions::default())
            .map_err(|e| Failure::new(exit::CONSTRUCTION, e.to_string()))?;
        Some(cert.labels)
    } else {
        None
    };
    emit(&g.to_dot(labels.as_deref()), out)?;
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct { spec, out, no_fallback } => cmd_construct(spec, out.as_deref(), *no_fallback),
        Command::Verify { cert, graph, labels } => {
            cmd_verify(cert.as_deref(), graph.as_deref(), labels.as_deref())
        }
        Command::Solve { input, budget, target, jobs } => cmd_solve(input, budget, *target, *jobs),
        Command::Predict { spec } => cmd_predict(spec),
        Command::Sweep(args) => sweep::run(args),
        Command::ExportDot { spec, labeled, out } => cmd_export_dot(spec, *labeled, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
