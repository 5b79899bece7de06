//! Command-line front end: parse graphs and permutations, dispatch
//! computations, run verification suites, emit JSON or CSV reports.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 degenerate input, 4 non-automorphism, 5 channel disagreement.

pub mod corpus;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::combinat::{Graph, Permutation};
use crate::ehrhart;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, QVector};
use crate::polytope::rvol;
use crate::sep::{fixed_polytope, rvol_fixed_formula, sep_build};

use corpus::CorpusSpec;
use suites::Suite;

#[derive(Parser, Debug)]
#[command(name = "sepvol", version, about = "Exact symmetric edge polytopes, fixed subpolytopes, and lattice-normalized volumes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph file: JSON {"n": ..., "edges": [[i,j], ...]} or plain lines
    /// "i j", with 1-based vertex labels.
    #[arg(long, conflicts_with = "complete")]
    pub graph: Option<PathBuf>,

    /// Use the complete graph on N vertices instead of a file.
    #[arg(long, value_name = "N")]
    pub complete: Option<usize>,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph> {
        let graph = match (&self.graph, self.complete) {
            (Some(path), None) => Graph::parse(&std::fs::read_to_string(path)?)?,
            (None, Some(n)) => {
                if n < 2 {
                    return Err(Error::Degenerate("complete graph needs n >= 2".into()));
                }
                Graph::complete(n)
            }
            _ => {
                return Err(Error::Parse(
                    "exactly one of --graph FILE or --complete N is required".into(),
                ))
            }
        };
        if !graph.is_connected() {
            eprintln!("warning: input graph is not connected");
        }
        Ok(graph)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed-form contraction formula.
    Formula,
    /// Exact hull triangulation.
    Hull,
    /// Ehrhart leading coefficient (dimension at most 4).
    Ehrhart,
    /// All channels plus an agreement flag.
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Vertices and halfspace description of the symmetric edge polytope.
    Vertices {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Fixed subpolytope under a coordinate permutation.
    Fixed {
        #[command(flatten)]
        graph: GraphArgs,
        /// Permutation in 1-based cycle notation, e.g. "(1 2)(3 4)".
        #[arg(long)]
        perm: String,
    },
    /// Relative volume of the polytope (or its fixed subpolytope).
    Rvol {
        #[command(flatten)]
        graph: GraphArgs,
        /// Permutation in cycle notation; omitted means the identity.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Run a verification suite over a generated corpus.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest vertex count of the corpus families (2..=7).
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        /// Seed for the random connected graphs.
        #[arg(long, default_value_t = 20260811)]
        seed: u64,
    },
}

struct Output {
    json: serde_json::Value,
    csv: String,
    exit: i32,
}

/// Run the parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Vertices { graph } => cmd_vertices(graph),
        Command::Fixed { graph, perm } => cmd_fixed(graph, perm),
        Command::Rvol { graph, perm, method } => cmd_rvol(graph, perm.as_deref(), *method),
        Command::Verify { suite, nmax, seed } => cmd_verify(*suite, *nmax, *seed),
    };
    match result {
        Ok(output) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut text = serde_json::to_string_pretty(&output.json)
                        .expect("reports serialize");
                    text.push('\n');
                    text
                }
                Format::Csv => output.csv,
            };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, rendered),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            output.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn vertex_rows(vertices: &[QVector]) -> Vec<Vec<String>> {
    vertices
        .iter()
        .map(|v| v.coords().iter().map(format_rational).collect())
        .collect()
}

fn cmd_vertices(args: &GraphArgs) -> Result<Output> {
    let graph = args.load()?;
    let sep = sep_build(&graph)?;
    let json = sep.poly().to_json();
    let mut csv = String::new();
    for row in vertex_rows(sep.poly().vertices()) {
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    Ok(Output { json, csv, exit: 0 })
}

fn cmd_fixed(args: &GraphArgs, perm: &str) -> Result<Output> {
    let graph = args.load()?;
    let sigma = Permutation::parse_cycles(perm, graph.n())?;
    let sep = sep_build(&graph)?;
    let fixed = fixed_polytope(&sep, &sigma)?;
    let json = json!({
        "vertices": vertex_rows(fixed.poly().vertices()),
        "dimension": fixed.poly().dim(),
        "facet_count": fixed.poly().facet_count(),
    });
    let mut csv = format!(
        "dimension,{}\nfacet_count,{}\n",
        fixed.poly().dim(),
        fixed.poly().facet_count()
    );
    for row in vertex_rows(fixed.poly().vertices()) {
        csv.push_str("vertex,");
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    Ok(Output { json, csv, exit: 0 })
}

fn cmd_rvol(args: &GraphArgs, perm: Option<&str>, method: Method) -> Result<Output> {
    let graph = args.load()?;
    let sigma = match perm {
        Some(text) => Permutation::parse_cycles(text, graph.n())?,
        None => Permutation::identity(graph.n()),
    };
    let sep = sep_build(&graph)?;
    let fixed = fixed_polytope(&sep, &sigma)?;

    let mut entries: Vec<(&str, String)> = Vec::new();
    let formula = || rvol_fixed_formula(&graph, &sigma).map(|v| format_rational(&v));
    let hull = || rvol(fixed.poly()).map(|v| format_rational(&v));
    let ehr = || ehrhart::leading_coefficient(fixed.poly()).map(|v| format_rational(&v));
    match method {
        Method::Formula => entries.push(("formula", formula()?)),
        Method::Hull => entries.push(("hull", hull()?)),
        Method::Ehrhart => entries.push(("ehrhart", ehr()?)),
        Method::All => {
            entries.push(("formula", formula()?));
            entries.push(("hull", hull()?));
            if fixed.poly().dim() <= ehrhart::MAX_DIM {
                entries.push(("ehrhart", ehr()?));
            }
        }
    }

    let mut json = serde_json::Map::new();
    let mut csv = String::new();
    for (name, value) in &entries {
        json.insert((*name).into(), json!(value));
        csv.push_str(&format!("{name},{value}\n"));
    }
    let mut exit = 0;
    if method == Method::All {
        let agree = entries.windows(2).all(|w| w[0].1 == w[1].1);
        json.insert("agree".into(), json!(agree));
        csv.push_str(&format!("agree,{agree}\n"));
        if !agree {
            // emit the report, then signal the theorem violation
            let detail: Vec<String> =
                entries.iter().map(|(n, v)| format!("{n}={v}")).collect();
            eprintln!("error: volume channels disagree: {}", detail.join(", "));
            exit = 5;
        }
    }
    Ok(Output { json: serde_json::Value::Object(json), csv, exit })
}

fn cmd_verify(suite: Suite, nmax: usize, seed: u64) -> Result<Output> {
    if !(2..=corpus::MAX_N).contains(&nmax) {
        return Err(Error::InvalidInput(format!(
            "--nmax must be between 2 and {}, got {nmax}",
            corpus::MAX_N
        )));
    }
    let spec = CorpusSpec::new(nmax, seed);
    let report = match thread_pool()? {
        Some(pool) => pool.install(|| suites::run_suite(suite, &spec)),
        None => suites::run_suite(suite, &spec),
    };
    let exit = i32::from(!report.all_pass);
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        csv: report.to_csv(),
        exit,
    })
}

/// Honor SEP_THREADS as a cap on suite worker count.
fn thread_pool() -> Result<Option<rayon::ThreadPool>> {
    match std::env::var("SEP_THREADS") {
        Err(_) => Ok(None),
        Ok(raw) => {
            let threads: usize = raw
                .parse()
                .map_err(|_| Error::Parse(format!("SEP_THREADS must be a number, got {raw:?}")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            Ok(Some(pool))
        }
    }
}
