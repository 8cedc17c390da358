mod batch;
mod solve;

use std::fs;
use std::io::{self, BufRead, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gooddecomp_core::dot::to_dot;
use gooddecomp_core::generators::{self, Filter, RandomSpec};
use gooddecomp_core::predicates::{self, DEFAULT_CYCLE_BUDGET};
use gooddecomp_core::{parse_graph6, verify, write_graph6, Decomposition, Graph, SearchLimits};
use serde_json::{json, Value};

use crate::solve::{solve, SolveMethod};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_SOFTWARE: u8 = 70;
pub const EXIT_IO: u8 = 74;

pub const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "gooddecomp",
    version,
    about = "Good decompositions of subcubic graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report degree class, connectivity, claw-freeness and 4-chordality.
    Classify {
        #[command(flatten)]
        input: GraphInput,
        /// Node budget for the induced cycle search.
        #[arg(long, default_value_t = DEFAULT_CYCLE_BUDGET)]
        cycle_budget: u64,
    },
    /// Find a good decomposition.
    Decompose {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        solver: SolverArgs,
        /// Print the colored DOT drawing instead of JSON.
        #[arg(long)]
        dot: bool,
        /// Include the case trace when the claw-free construction runs.
        #[arg(long)]
        trace: bool,
    },
    /// Check a decomposition against a graph.
    Verify {
        /// graph6 string.
        graph6: String,
        /// Decomposition JSON, a path to a file holding it, or - for stdin.
        decomposition: String,
    },
    /// Generate graphs as graph6 lines.
    Gen(GenArgs),
    /// Decompose a stream of graph6 lines, emitting one JSON record per line.
    Batch {
        /// Input file; stdin when absent or -.
        file: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        /// Worker threads.
        #[arg(long, short = 'j', default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        /// Include the decomposition in each good record.
        #[arg(long)]
        with_decomposition: bool,
        #[arg(long, default_value_t = DEFAULT_CYCLE_BUDGET)]
        cycle_budget: u64,
    },
}

#[derive(Args)]
struct GraphInput {
    /// graph6 string; read from stdin when absent or -.
    graph6: Option<String>,
    /// Read the graph6 line from this file instead.
    #[arg(long, short = 'f', conflicts_with = "graph6")]
    file: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = SolveMethod::Auto)]
    method: SolveMethod,
    /// Exact search node budget.
    #[arg(long, env = "GOODDECOMP_MAX_NODES", default_value_t = gooddecomp_core::exact::DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Exact search wall-clock limit in milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
}

impl SolverArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_nodes: self.max_nodes,
            time_limit: self.timeout_ms.map(Duration::from_millis),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Path,
    Complete,
    K4MinusEdge,
    CompleteBipartite,
    Petersen,
    Prism,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    None,
    ClawFree,
    FourChordal,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count (cycle, path, complete, prism, random).
    #[arg(long)]
    n: Option<usize>,
    /// Part sizes for complete-bipartite.
    #[arg(long, default_value_t = 3)]
    a: usize,
    #[arg(long, default_value_t = 3)]
    b: usize,
    /// Replace every vertex of the (cubic) result by a triangle.
    #[arg(long)]
    inflate: bool,
    /// First seed; graph i of a random run uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FilterArg::None)]
    filter: FilterArg,
    #[arg(long)]
    target_edges: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    retry_cap: usize,
    /// Number of random graphs.
    #[arg(long, default_value_t = 1)]
    count: usize,
}

/// A failed command: message for stderr and the exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(err: io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("gooddecomp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Classify {
            input,
            cycle_budget,
        } => {
            let (line, g) = read_graph(&input)?;
            print_json(&classify(&line, &g, cycle_budget))?;
            Ok(EXIT_OK)
        }
        Command::Decompose {
            input,
            solver,
            dot,
            trace,
        } => decompose(&input, solver, dot, trace),
        Command::Verify {
            graph6,
            decomposition,
        } => {
            let g =
                parse_graph6(&graph6).map_err(|e| Failure::usage(format!("{graph6:?}: {e}")))?;
            let text = read_decomposition_text(&decomposition)?;
            let d = Decomposition::from_json(&text).map_err(|e| Failure::usage(e.to_string()))?;
            let report = verify(&g, &d);
            let mut out = serde_json::to_value(&report).unwrap();
            out["schema"] = json!(SCHEMA);
            print_json(&out)?;
            Ok(if report.ok { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Gen(args) => generate(&args),
        Command::Batch {
            file,
            solver,
            jobs,
            with_decomposition,
            cycle_budget,
        } => {
            let options = batch::Options {
                method: solver.method,
                limits: solver.limits(),
                with_decomposition,
                cycle_budget,
            };
            let reader: Box<dyn BufRead> = match file {
                Some(p) if p.as_os_str() != "-" => {
                    Box::new(io::BufReader::new(fs::File::open(&p).map_err(Failure::io)?))
                }
                _ => Box::new(io::stdin().lock()),
            };
            batch::run(reader, &mut io::stdout().lock(), jobs as usize, &options)
                .map_err(Failure::io)?;
            Ok(EXIT_OK)
        }
    }
}

fn read_graph(input: &GraphInput) -> Result<(String, Graph), Failure> {
    let line = match (&input.graph6, &input.file) {
        (Some(s), _) if s != "-" => s.clone(),
        (_, Some(path)) => first_line(&fs::read_to_string(path).map_err(Failure::io)?),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(Failure::io)?;
            first_line(&s)
        }
    };
    let g = parse_graph6(&line).map_err(|e| Failure::usage(format!("{line:?}: {e}")))?;
    Ok((line, g))
}

fn first_line(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("")
        .to_string()
}

fn read_decomposition_text(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(Failure::io)?;
        Ok(s)
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::usage(format!("{arg}: {e}")))
    }
}

pub fn print_json(v: &Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{v}").map_err(Failure::io)
}

/// Predicate report with witnesses.
pub fn classify(line: &str, g: &Graph, cycle_budget: u64) -> Value {
    let class = predicates::degree_class(g);
    let claw = predicates::find_claw(g);
    let (four_chordal, cycle) = match predicates::find_induced_cycle_longer_than(g, 4, cycle_budget)
    {
        Ok(w) => (json!(w.is_none()), json!(w)),
        Err(_) => (Value::Null, Value::Null),
    };
    json!({
        "schema": SCHEMA,
        "graph6": line,
        "n": g.n(),
        "m": g.edge_count(),
        "degree_class": class,
        "subcubic": class.is_subcubic(),
        "cubic": class == predicates::DegreeClass::Cubic,
        "connected": predicates::is_connected(g),
        "two_edge_connected": predicates::is_two_edge_connected(g),
        "bridges": predicates::bridges(g),
        "claw_free": claw.is_none(),
        "claw": claw,
        "four_chordal": four_chordal,
        "induced_cycle": cycle,
        "triangles": predicates::triangles(g).len(),
    })
}

fn decompose(
    input: &GraphInput,
    solver: SolverArgs,
    dot: bool,
    trace: bool,
) -> Result<u8, Failure> {
    let (line, g) = read_graph(input)?;
    let solved = match solve(&g, solver.method, solver.limits()) {
        Ok(s) => s,
        Err(err) => {
            let mut out = json!({ "schema": SCHEMA, "graph6": line });
            out["error"] = err.to_json();
            print_json(&out)?;
            return Err(Failure {
                code: err.exit_code(),
                message: err.message,
            });
        }
    };
    if dot {
        let text = to_dot(&g, solved.decomposition.as_ref()).expect("solver output verifies");
        print!("{text}");
    } else {
        let with_trace = trace || solver.method == SolveMethod::Clawfree;
        print_json(&solved.to_json(&line, true, with_trace))?;
    }
    Ok(solved.exit_code())
}

fn generate(args: &GenArgs) -> Result<u8, Failure> {
    let need_n = || {
        args.n
            .ok_or_else(|| Failure::usage("this family needs --n"))
    };
    if args.count != 1 && !matches!(args.family, Family::Random) {
        return Err(Failure::usage("--count only applies to --family random"));
    }
    let gen_err = |e: gooddecomp_core::error::GenError| Failure::usage(e.to_string());
    let mut graphs = Vec::new();
    match args.family {
        Family::Cycle => graphs.push(generators::cycle(need_n()?).map_err(gen_err)?),
        Family::Path => graphs.push(generators::path(need_n()?).map_err(gen_err)?),
        Family::Complete => graphs.push(generators::complete(need_n()?).map_err(gen_err)?),
        Family::K4MinusEdge => graphs.push(generators::k4_minus_edge()),
        Family::CompleteBipartite => {
            graphs.push(generators::complete_bipartite(args.a, args.b).map_err(gen_err)?)
        }
        Family::Petersen => graphs.push(generators::petersen()),
        Family::Prism => graphs.push(generators::prism(need_n()?).map_err(gen_err)?),
        Family::Random => {
            let filter = match args.filter {
                FilterArg::None => Filter::None,
                FilterArg::ClawFree => Filter::ClawFree,
                FilterArg::FourChordal => Filter::FourChordal,
            };
            let n = need_n()?;
            for i in 0..args.count {
                let spec = RandomSpec {
                    n,
                    seed: args.seed.wrapping_add(i as u64),
                    filter,
                    target_edges: args.target_edges,
                    retry_cap: args.retry_cap,
                };
                let g = generators::random_connected_subcubic(&spec).map_err(|e| Failure {
                    code: EXIT_FAIL,
                    message: format!("seed {}: {e}", spec.seed),
                })?;
                graphs.push(g);
            }
        }
    }
    let mut out = io::stdout().lock();
    for g in graphs {
        let g = if args.inflate {
            generators::triangle_inflation(&g).map_err(gen_err)?
        } else {
            g
        };
        let line = write_graph6(&g).map_err(|e| Failure::usage(e.to_string()))?;
        writeln!(out, "{line}").map_err(Failure::io)?;
    }
    Ok(EXIT_OK)
}
