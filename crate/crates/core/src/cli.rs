//! Command-line front end. [`run`] parses arguments, dispatches, writes
//! results to stdout and errors as JSON to stderr, and returns the exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cotree::{build_cotree, find_induced_c4, is_trivially_perfect};
use crate::error::{Error, Result};
use crate::gadget::{
    build_gadget, default_h, paper_h, smallest_passing_h, symbolic_target, to_perfect, verify_gadget, PackingInstance,
    PerfectReduction,
};
use crate::gen::{seeded_graph, GenConfig, GraphClass};
use crate::graph::{Clustering, Graph};
use crate::nlc::{solve_cograph_p, solve_p_cluster, Expression};
use crate::oracle::{brute_force_optimal, brute_force_p, enumerate_all_optimal, DEFAULT_BUDGET};
use crate::tpg::{dp_table, solution_from_table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "clusteredit",
    version,
    about = "Exact Cluster Editing on cographs and trivially perfect graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a graph as trivially perfect, cograph, or neither.
    Recognize {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Solve Cluster Editing, picking an engine from the graph class.
    Solve(SolveArgs),
    /// Exhaustive search over all vertex partitions.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        p: Option<usize>,
        /// With --p: allow fewer than p clusters.
        #[arg(long, requires = "p")]
        at_most: bool,
        /// List every optimal clustering.
        #[arg(long, conflicts_with = "p")]
        all_optimal: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = positive_budget)]
        budget: u128,
    },
    /// Bin packing gadget tools.
    Gadget {
        #[command(subcommand)]
        command: GadgetCommand,
    },
    /// Random cograph or trivially perfect graph from a seeded cotree.
    Gen {
        #[arg(long, value_enum)]
        class: GenClass,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long, default_value_t = 0.5)]
        join_probability: f64,
    },
    /// Evaluate an NLC expression to a graph.
    Eval {
        #[arg(long)]
        expr: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(required_unless_present = "expr", conflicts_with = "expr")]
    graph: Option<PathBuf>,
    /// Solve p-Cluster Editing on an NLC expression file.
    #[arg(long, requires = "p")]
    expr: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Class::Auto)]
    class: Class,
    /// Number of clusters.
    #[arg(long)]
    p: Option<usize>,
    /// With --p: allow fewer than p clusters.
    #[arg(long, requires = "p")]
    at_most: bool,
    /// Re-solve with the oracle and compare costs.
    #[arg(long)]
    check: bool,
    /// Write the trivially perfect DP table as TSV to this file (`-` for stdout).
    #[arg(long)]
    dump_table: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = positive_budget)]
    budget: u128,
}

#[derive(Debug, Subcommand)]
enum GadgetCommand {
    /// Write the gadget graph; the sidecar goes to `<out>.json`.
    Build {
        packing: PathBuf,
        #[arg(long)]
        h: Option<u64>,
        /// Graph output file. Without it the graph goes to stdout with the
        /// sidecar as a leading comment line.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pad a non-perfect instance into an equivalent perfect one first.
        #[arg(long)]
        reduce: bool,
        /// Print only `t` and the vertex count as JSON, without building the
        /// graph. `h` defaults to `(n*k*a)^10` here.
        #[arg(long, conflicts_with = "out")]
        symbolic: bool,
    },
    /// Smallest `h` from which verification passes for every `h` up to `--max-h`.
    Sweep {
        packing: PathBuf,
        /// Defaults to `a^2 + 1`.
        #[arg(long)]
        max_h: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = positive_budget)]
        budget: u128,
    },
    /// Build the gadget and check its guarantees by exhaustive search.
    Verify {
        packing: PathBuf,
        #[arg(long)]
        h: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = positive_budget)]
        budget: u128,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Class {
    Auto,
    Tpg,
    Cograph,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenClass {
    Cograph,
    Tpg,
}

fn positive_budget(s: &str) -> std::result::Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be positive".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

/// Failure of a subcommand, carried to the exit code.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    /// The command ran and reported a negative answer on stdout.
    Negative,
    CheckFailed {
        engine: &'static str,
        cost: u64,
        oracle: u64,
    },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type CmdResult = std::result::Result<(), Failure>;

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[usize; 4]>,
}

fn error_kind(e: &Error) -> (&'static str, i32) {
    match e {
        Error::InvalidPartition(_) => ("invalid-partition", EXIT_USAGE),
        Error::InvalidInput(_) => ("invalid-input", EXIT_USAGE),
        Error::Parse { .. } => ("parse", EXIT_USAGE),
        Error::LabelOutOfRange { .. } => ("label-out-of-range", EXIT_USAGE),
        Error::Io(_) => ("io", EXIT_USAGE),
        Error::NotCograph { .. } => ("not-cograph", EXIT_NO),
        Error::NotTriviallyPerfect { .. } => ("not-trivially-perfect", EXIT_NO),
        Error::Infeasible { .. } => ("infeasible", EXIT_NO),
        Error::TriviallyNo(_) => ("trivially-no", EXIT_NO),
        Error::NotPerfect { .. } => ("not-perfect", EXIT_NO),
        Error::BudgetExceeded { .. } => ("budget-exceeded", EXIT_BUDGET),
    }
}

/// Runs the binary with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs with explicit arguments (including the program name) and streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            report(err, "usage", e.kind().to_string(), None);
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Recognize { graph, format } => recognize(&graph, format, out),
        Command::Solve(args) => solve(&args, out),
        Command::Oracle {
            graph,
            p,
            at_most,
            all_optimal,
            budget,
        } => oracle(&graph, p, at_most, all_optimal, budget, out),
        Command::Gadget { command } => gadget(command, out),
        Command::Gen {
            class,
            n,
            seed,
            max_arity,
            join_probability,
        } => generate(class, n, seed, max_arity, join_probability, out),
        Command::Eval { expr } => eval(&expr, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Negative) => EXIT_NO,
        Err(Failure::Usage(message)) => {
            report(err, "usage", message, None);
            EXIT_USAGE
        }
        Err(Failure::CheckFailed { engine, cost, oracle }) => {
            report(
                err,
                "check-failed",
                format!("{engine} reported cost {cost} but the oracle found {oracle}"),
                None,
            );
            EXIT_NO
        }
        Err(Failure::Lib(e)) => {
            let (kind, code) = error_kind(&e);
            let witness = match e {
                Error::NotCograph { witness } | Error::NotTriviallyPerfect { witness, .. } => Some(witness),
                _ => None,
            };
            report(err, kind, e.to_string(), witness);
            code
        }
    }
}

fn report(err: &mut dyn Write, kind: &str, message: String, witness: Option<[usize; 4]>) {
    let json = ErrorJson {
        error: kind,
        message,
        witness,
    };
    let _ = writeln!(err, "{}", serde_json::to_string(&json).expect("serializable"));
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?)
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))?;
    Ok(())
}

#[derive(Serialize)]
struct RecognizeJson {
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    cotree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[usize; 4]>,
    /// For cographs that are not trivially perfect: an induced C4.
    #[serde(skip_serializing_if = "Option::is_none")]
    c4: Option<[usize; 4]>,
}

fn recognize(path: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(path)?;
    let result = match build_cotree(&g) {
        Ok(t) if is_trivially_perfect(&t) => RecognizeJson {
            class: "trivially-perfect",
            cotree: Some(t.to_string()),
            witness: None,
            c4: None,
        },
        Ok(t) => RecognizeJson {
            class: "cograph",
            cotree: Some(t.to_string()),
            witness: None,
            c4: find_induced_c4(&g),
        },
        Err(Error::NotCograph { witness }) => RecognizeJson {
            class: "neither",
            cotree: None,
            witness: Some(witness),
            c4: None,
        },
        Err(e) => return Err(e.into()),
    };
    match format {
        Format::Json => print_json(out, &result),
        Format::Text => {
            writeln!(out, "{}", result.class)?;
            if let Some(t) = &result.cotree {
                writeln!(out, "{t}")?;
            }
            if let Some(w) = result.witness {
                writeln!(out, "p4 {} {} {} {}", w[0], w[1], w[2], w[3])?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SolveJson {
    cost: u64,
    clusters: Vec<Vec<usize>>,
    engine: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<&'static str>,
}

fn solve(args: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    if let Some(expr) = &args.expr {
        if args.class != Class::Auto || args.check || args.dump_table.is_some() {
            return Err(Failure::Usage(
                "--expr cannot be combined with --class, --check or --dump-table".into(),
            ));
        }
        let e = Expression::parse(&read(expr)?)?;
        let p = args.p.expect("clap enforces --p with --expr");
        let s = solve_p_cluster(&e, p, !args.at_most)?;
        return print_json(
            out,
            &SolveJson {
                cost: s.cost,
                clusters: s.clustering.clusters().to_vec(),
                engine: "nlc",
                check: None,
            },
        );
    }
    let g = read_graph(args.graph.as_deref().expect("clap enforces a graph"))?;
    if args.dump_table.is_some() && (args.p.is_some() || matches!(args.class, Class::Cograph | Class::Oracle)) {
        return Err(Failure::Usage("--dump-table needs the trivially perfect solver".into()));
    }
    let exact_p = !args.at_most;
    let (engine, cost, clustering) = match (args.class, args.p) {
        (Class::Tpg, Some(_)) => {
            return Err(Failure::Usage("the trivially perfect solver does not take --p".into()));
        }
        (Class::Tpg, None) => run_tpg(&g, args, out)?,
        (Class::Auto, None) if build_cotree(&g).is_ok_and(|t| is_trivially_perfect(&t)) => run_tpg(&g, args, out)?,
        (Class::Auto, Some(p)) if build_cotree(&g).is_ok() => run_nlc(&g, p, exact_p)?,
        (Class::Cograph, p) => run_nlc(&g, p.unwrap_or(g.n().max(1)), p.is_some() && exact_p)?,
        (Class::Auto | Class::Oracle, p) => {
            if args.dump_table.is_some() {
                return Err(Failure::Usage("--dump-table needs the trivially perfect solver".into()));
            }
            let s = match p {
                Some(p) => brute_force_p(&g, p, exact_p, args.budget)?,
                None => brute_force_optimal(&g, args.budget)?,
            };
            ("oracle", s.cost, s.clustering)
        }
    };
    let check = if args.check && engine != "oracle" {
        let oracle = match args.p {
            Some(p) => brute_force_p(&g, p, exact_p, args.budget),
            None => brute_force_optimal(&g, args.budget),
        };
        match oracle {
            Ok(s) if s.cost == cost => Some("agree"),
            Ok(s) => {
                return Err(Failure::CheckFailed {
                    engine,
                    cost,
                    oracle: s.cost,
                })
            }
            Err(Error::BudgetExceeded { .. }) => Some("skipped"),
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    print_json(
        out,
        &SolveJson {
            cost,
            clusters: clustering.clusters().to_vec(),
            engine,
            check,
        },
    )
}

fn run_tpg(
    g: &Graph,
    args: &SolveArgs,
    out: &mut dyn Write,
) -> std::result::Result<(&'static str, u64, Clustering), Failure> {
    let table = dp_table(g)?;
    if let Some(path) = &args.dump_table {
        if path.as_os_str() == "-" {
            out.write_all(table.to_tsv().as_bytes())?;
        } else {
            fs::write(path, table.to_tsv())?;
        }
    }
    let s = solution_from_table(g, &table)?;
    Ok(("tpg", s.cost, s.clustering))
}

fn run_nlc(g: &Graph, p: usize, exact_p: bool) -> std::result::Result<(&'static str, u64, Clustering), Failure> {
    let s = solve_cograph_p(g, p, exact_p)?;
    Ok(("nlc", s.cost, s.clustering))
}

#[derive(Serialize)]
struct AllOptimalJson {
    cost: u64,
    clusterings: Vec<Vec<Vec<usize>>>,
}

fn oracle(path: &Path, p: Option<usize>, at_most: bool, all: bool, budget: u128, out: &mut dyn Write) -> CmdResult {
    let g = read_graph(path)?;
    if all {
        let (cost, list) = enumerate_all_optimal(&g, budget)?;
        return print_json(
            out,
            &AllOptimalJson {
                cost,
                clusterings: list.iter().map(|c| c.clusters().to_vec()).collect(),
            },
        );
    }
    let s = match p {
        Some(p) => brute_force_p(&g, p, !at_most, budget)?,
        None => brute_force_optimal(&g, budget)?,
    };
    print_json(out, &crate::graph::ClusteringJson::new(s.cost, &s.clustering))
}

#[derive(Serialize)]
struct SymbolicJson {
    t: u128,
    h: u128,
    vertices: u128,
}

#[derive(Serialize)]
struct SweepJson {
    max_h: u64,
    smallest_passing_h: Option<u64>,
}

fn gadget(command: GadgetCommand, out: &mut dyn Write) -> CmdResult {
    match command {
        GadgetCommand::Build {
            packing,
            h,
            out: target,
            reduce,
            symbolic,
        } => {
            let mut inst = PackingInstance::parse(&read(&packing)?)?;
            if reduce {
                inst = match to_perfect(&inst)? {
                    PerfectReduction::Perfect(p) => p,
                    PerfectReduction::AlwaysPackable => {
                        return Err(Failure::Usage(
                            "instance is trivially packable and needs no gadget".into(),
                        ))
                    }
                };
            }
            if symbolic {
                let h = match h {
                    Some(h) => u128::from(h),
                    None => {
                        paper_h(&inst).ok_or_else(|| Error::InvalidInput("(n*k*a)^10 overflows 128 bits".into()))?
                    }
                };
                let (t, vertices) = symbolic_target(&inst, h)?
                    .ok_or_else(|| Error::InvalidInput("gadget size overflows 128 bits".into()))?;
                return print_json(out, &SymbolicJson { t, h, vertices });
            }
            let g = build_gadget(&inst, h.unwrap_or_else(|| default_h(&inst)))?;
            let sidecar = serde_json::to_string(&g.sidecar()).expect("serializable");
            match target {
                Some(path) => {
                    fs::write(&path, g.graph.to_text())?;
                    let mut side = path.into_os_string();
                    side.push(".json");
                    fs::write(side, sidecar + "\n")?;
                }
                None => {
                    writeln!(out, "# {sidecar}")?;
                    out.write_all(g.graph.to_text().as_bytes())?;
                }
            }
            Ok(())
        }
        GadgetCommand::Sweep { packing, max_h, budget } => {
            let inst = PackingInstance::parse(&read(&packing)?)?;
            let max_h = max_h.unwrap_or_else(|| default_h(&inst));
            if max_h == 0 {
                return Err(Failure::Usage("--max-h must be positive".into()));
            }
            let smallest = smallest_passing_h(&inst, max_h, budget)?;
            print_json(
                out,
                &SweepJson {
                    max_h,
                    smallest_passing_h: smallest,
                },
            )?;
            if smallest.is_some() {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
        GadgetCommand::Verify { packing, h, budget } => {
            let inst = PackingInstance::parse(&read(&packing)?)?;
            let report = verify_gadget(&inst, h.unwrap_or_else(|| default_h(&inst)), budget)?;
            print_json(out, &report)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
    }
}

fn generate(class: GenClass, n: usize, seed: u64, max_arity: usize, join: f64, out: &mut dyn Write) -> CmdResult {
    if max_arity < 2 {
        return Err(Failure::Usage("--max-arity must be at least 2".into()));
    }
    if !(0.0..=1.0).contains(&join) {
        return Err(Failure::Usage("--join-probability must lie in [0, 1]".into()));
    }
    let class = match class {
        GenClass::Cograph => GraphClass::Cograph,
        GenClass::Tpg => GraphClass::TriviallyPerfect,
    };
    let cfg = GenConfig {
        n,
        class,
        max_arity,
        join_probability: join,
    };
    out.write_all(seeded_graph(&cfg, seed).to_text().as_bytes())?;
    Ok(())
}

fn eval(path: &Path, out: &mut dyn Write) -> CmdResult {
    let e = Expression::parse(&read(path)?)?;
    out.write_all(e.eval().graph.to_text().as_bytes())?;
    Ok(())
}
