//! Command-line front end: semiring validation, commuting-graph runs,
//! distance certification, claim verification, and centralizer enumeration.
//!
//! Exit codes: 0 success, 1 usage or structural error, 2 verification
//! failure (failed or incomplete checks, axiom violations, refuted
//! certificates).

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commutant::centralizer::{centralizer, ENUMERATION_BUDGET};
use commutant::export::{export_csv, export_dot};
use commutant::graph::{
    certify_distance_ge4, BuildMode, CommutingGraph, GraphBudget,
};
use commutant::matrix::{parse_matrix, parse_matrix_file_name, AnyMatrix, FinMatrix};
use commutant::semiring::{parse_semiring_table, SemiringKind, SemiringTable};
use commutant::witness::verify::{
    verify, verify_all, CheckStatus, VerificationReport, VerifyConfig, DEFAULT_BUDGET,
    DEFAULT_SEED,
};
use commutant::{Error, Result};

const MIN_MEMORY_CAP_MIB: u64 = 64;

#[derive(Parser)]
#[command(
    name = "commutant",
    version,
    about = "Commuting graphs of matrix semirings: build, measure, certify, verify"
)]
struct Cli {
    /// Worker threads for parallel scans (overrides COMMUTANT_WORKERS).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Semiring table utilities.
    Semiring {
        #[command(subcommand)]
        command: SemiringCommand,
    },
    /// Commuting-graph computations over a finite semiring.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Certify that two matrices lie at distance >= 4 in their graph.
    CertifyGe4 {
        /// Matrix literal file for the first endpoint.
        #[arg(long)]
        a: PathBuf,
        /// Matrix literal file for the second endpoint.
        #[arg(long)]
        b: PathBuf,
    },
    /// Run a claim's verification battery (`all` runs every claim).
    Verify {
        /// Claim id such as thm-2.2, or `all`.
        id: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cap on enumeration or sample counts per check.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate the centralizer of a matrix from a literal file.
    Centralizer {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand)]
enum SemiringCommand {
    /// Parse a table file, validate the axioms, and classify it.
    Check { file: PathBuf },
}

#[derive(Args)]
struct GraphArgs {
    /// Builtin name (boolean, modular:<m>, chain:<k>) or a table file path.
    #[arg(long)]
    semiring: String,
    /// Matrix dimension.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Mode::Materialized)]
    mode: Mode,
    /// Adjacency memory cap in MiB (minimum 64).
    #[arg(long, default_value_t = 1024)]
    memory_cap_mib: u64,
    /// Opt in to adjacency matrices above the large-graph threshold.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Materialized,
    Implicit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Print the graph's diameter (`inf` when disconnected).
    Diameter {
        #[command(flatten)]
        args: GraphArgs,
    },
    /// Print the distance between two vertices given as literal files.
    Distance {
        #[command(flatten)]
        args: GraphArgs,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Print the connected components.
    Components {
        #[command(flatten)]
        args: GraphArgs,
    },
    /// Write the graph in DOT or CSV edge-list form.
    Export {
        #[command(flatten)]
        args: GraphArgs,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = init_workers(cli.workers) {
        eprintln!("error: {e}");
        return 1;
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Flag wins over the COMMUTANT_WORKERS environment variable.
fn init_workers(flag: Option<usize>) -> Result<()> {
    let requested = match flag {
        Some(w) => Some(w),
        None => match std::env::var("COMMUTANT_WORKERS") {
            Ok(raw) => Some(raw.parse::<usize>().map_err(|_| {
                Error::Domain(format!("invalid COMMUTANT_WORKERS value {raw:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(w) = requested {
        if w == 0 {
            return Err(Error::Domain("worker count must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Error::Internal(format!("thread pool setup failed: {e}")))?;
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Semiring {
            command: SemiringCommand::Check { file },
        } => semiring_check(&file),
        Command::Graph { command } => graph_command(command),
        Command::CertifyGe4 { a, b } => certify_command(&a, &b),
        Command::Verify {
            id,
            seed,
            budget,
            output,
        } => verify_command(&id, seed, budget, output.as_deref()),
        Command::Centralizer { matrix } => centralizer_command(&matrix),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Structure(format!("cannot read {}: {e}", path.display())))
}

fn semiring_check(file: &Path) -> Result<i32> {
    let raw = parse_semiring_table(&read(file)?)?;
    println!("semiring {} order {}", raw.name(), raw.order());
    let table = match raw.canonicalize() {
        Ok(t) => t,
        Err(Error::Structure(msg)) => {
            // A table without both identities is not a semiring.
            println!("axioms: violated");
            println!("  {msg}");
            return Ok(2);
        }
        Err(e) => return Err(e),
    };
    let report = table.validate_axioms();
    if !report.is_valid() {
        println!("axioms: violated");
        for v in &report.violations {
            println!("  {v}");
        }
        return Ok(2);
    }
    println!("axioms: ok");
    let props = table.classify();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    println!("commutative: {}", yes_no(props.commutative));
    println!("antinegative: {}", yes_no(props.antinegative));
    println!("entire: {}", yes_no(props.entire));
    println!("division: {}", yes_no(props.division));
    match table.find_zero_divisor_pair() {
        Some((x, y)) => println!(
            "zero divisors: ({}, {})",
            table.element_name(x),
            table.element_name(y)
        ),
        None => println!("zero divisors: none"),
    }
    Ok(0)
}

/// Accepts a builtin name or a path to a table file.
fn resolve_semiring(name: &str) -> Result<SemiringKind> {
    match SemiringKind::resolve(name) {
        Ok(kind) => Ok(kind),
        Err(builtin_err) => {
            if Path::new(name).is_file() {
                let table = parse_semiring_table(&read(Path::new(name))?)?.canonicalize()?;
                let report = table.validate_axioms();
                if let Some(v) = report.violations.first() {
                    return Err(Error::Structure(format!(
                        "table {name} violates the axioms: {v}"
                    )));
                }
                Ok(SemiringKind::Finite(Arc::new(table)))
            } else {
                Err(builtin_err)
            }
        }
    }
}

fn graph_budget(args: &GraphArgs) -> Result<GraphBudget> {
    if args.memory_cap_mib < MIN_MEMORY_CAP_MIB {
        return Err(Error::Domain(format!(
            "memory cap {} MiB is below the minimum {} MiB",
            args.memory_cap_mib, MIN_MEMORY_CAP_MIB
        )));
    }
    Ok(GraphBudget {
        memory_cap_bytes: args.memory_cap_mib * 1024 * 1024,
        allow_large: args.allow_large,
        ..GraphBudget::default()
    })
}

fn build_graph(args: &GraphArgs) -> Result<(Arc<SemiringTable>, CommutingGraph)> {
    let table = resolve_semiring(&args.semiring)?.as_finite()?.clone();
    let mode = match args.mode {
        Mode::Materialized => BuildMode::Materialized,
        Mode::Implicit => BuildMode::Implicit,
    };
    let graph = CommutingGraph::build(table.clone(), args.n, mode, &graph_budget(args)?)?;
    Ok((table, graph))
}

fn load_finite_matrix(path: &Path, table: &Arc<SemiringTable>) -> Result<FinMatrix> {
    let text = read(path)?;
    match parse_matrix(&text, &SemiringKind::Finite(table.clone()))? {
        AnyMatrix::Finite(m) => Ok(m),
        AnyMatrix::Tropical(_) => unreachable!("finite kind parses to a finite matrix"),
    }
}

fn graph_command(command: GraphCommand) -> Result<i32> {
    match command {
        GraphCommand::Diameter { args } => {
            let (_, graph) = build_graph(&args)?;
            let result = graph.diameter()?;
            println!("{}", result.value);
            Ok(0)
        }
        GraphCommand::Distance { args, a, b } => {
            let (table, graph) = build_graph(&args)?;
            let ma = load_finite_matrix(&a, &table)?;
            let mb = load_finite_matrix(&b, &table)?;
            let result = graph.distance(&ma, &mb)?;
            println!("{}", result.value);
            if let Some(path) = result.witness_path {
                let codes: Vec<String> = path.iter().map(|c| c.to_string()).collect();
                println!("path: {}", codes.join(" "));
            }
            Ok(0)
        }
        GraphCommand::Components { args } => {
            let (_, graph) = build_graph(&args)?;
            let components = graph.components()?;
            println!("components {}", components.len());
            for comp in &components {
                println!("least {} size {}", comp[0], comp.len());
            }
            Ok(0)
        }
        GraphCommand::Export {
            args,
            format,
            output,
        } => {
            let (_, graph) = build_graph(&args)?;
            let text = match format {
                ExportFormat::Dot => export_dot(&graph)?,
                ExportFormat::Csv => export_csv(&graph)?,
            };
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Error::Structure(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

/// Loads a matrix whose header names a builtin finite semiring.
fn load_endpoint(path: &Path) -> Result<(Arc<SemiringTable>, usize, FinMatrix)> {
    let text = read(path)?;
    let (n, name) = parse_matrix_file_name(&text)?;
    let table = SemiringKind::resolve(&name)?.as_finite()?.clone();
    match parse_matrix(&text, &SemiringKind::Finite(table.clone()))? {
        AnyMatrix::Finite(m) => Ok((table, n, m)),
        AnyMatrix::Tropical(_) => unreachable!("finite kind parses to a finite matrix"),
    }
}

fn certify_command(a: &Path, b: &Path) -> Result<i32> {
    let (table_a, n_a, ma) = load_endpoint(a)?;
    let (table_b, n_b, mb) = load_endpoint(b)?;
    if table_a.name() != table_b.name() || n_a != n_b {
        return Err(Error::Mismatch(format!(
            "endpoints disagree: {} over {} vs {} over {}",
            n_a,
            table_a.name(),
            n_b,
            table_b.name()
        )));
    }
    match certify_distance_ge4(&table_a, n_a, &ma, &mb, &GraphBudget::default()) {
        Ok(cert) if cert.holds => {
            println!(
                "certified: distance >= 4 (neighborhoods {} and {}, {} cross pairs, {} matrices scanned)",
                cert.neighborhood_a, cert.neighborhood_b, cert.cross_pairs_checked, cert.scanned
            );
            Ok(0)
        }
        Ok(cert) => {
            match cert.counterexample {
                Some((u, v)) if u == v => println!("refuted: common neighbor with code {u}"),
                Some((u, v)) => println!("refuted: commuting cross pair ({u}, {v})"),
                None => println!("refuted"),
            }
            Ok(2)
        }
        // Equal or adjacent endpoints mean the distance bound is false, not
        // that the request was malformed.
        Err(Error::Domain(msg)) if msg.contains("equal") || msg.contains("adjacent") => {
            println!("refuted: {msg}");
            Ok(2)
        }
        Err(e) => Err(e),
    }
}

fn report_lines(report: &VerificationReport) {
    eprintln!("{}: {}", report.theorem, status_word(report.status));
    for check in &report.checks {
        eprintln!("  {}: {}", check.name, status_word(check.status));
    }
}

fn status_word(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Incomplete => "incomplete",
        CheckStatus::CrossReference => "cross-reference",
    }
}

fn verify_command(id: &str, seed: u64, budget: u64, output: Option<&Path>) -> Result<i32> {
    let config = VerifyConfig { seed, budget };
    let (json, failed) = if id == "all" {
        let reports = verify_all(&config)?;
        for r in &reports {
            report_lines(r);
        }
        let failed = reports
            .iter()
            .any(|r| matches!(r.status, CheckStatus::Fail | CheckStatus::Incomplete));
        (
            serde_json::to_string_pretty(&reports).expect("reports serialize"),
            failed,
        )
    } else {
        let report = verify(id, &config)?;
        report_lines(&report);
        let failed = matches!(report.status, CheckStatus::Fail | CheckStatus::Incomplete);
        (report.to_json(), failed)
    };
    match output {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| Error::Structure(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(if failed { 2 } else { 0 })
}

fn centralizer_command(path: &Path) -> Result<i32> {
    let (_, _, m) = load_endpoint(path)?;
    let members = centralizer(&m, ENUMERATION_BUDGET)?;
    println!("centralizer size {}", members.len());
    for member in &members {
        println!("{} {}", member.code(), member.body_string());
    }
    Ok(0)
}
