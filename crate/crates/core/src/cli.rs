//! The `scp` command line. Reports are JSON on stdout, diagnostics go to
//! stderr, and the exit status is 0 (ok or feasible), 1 (infeasible or a
//! failed check), 2 (input error) or 3 (search budget exhausted).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::{exact_decide, exact_max_m, exact_min_radius, Decision, SearchBudget};
use crate::greedy::{greedy_sc, min_radius_greedy_threaded, GreedyOutcome};
use crate::io::document::{
    canonical, parse_instance, parse_partition, write_instance, write_partition, Document,
    InstanceFile, Metadata, PartitionFile,
};
use crate::io::generate::{gen_clustered, gen_random_points};
use crate::io::svg::render_svg;
use crate::metric::{Instance, Radius};
use crate::reductions::{
    coloring_from_cover, coloring_gadget, cover_from_coloring, graph_to_hop_metric,
    unit_ball_graph, PlanarOrthogonalGraph,
};
use crate::scan::RadiusSearch;
use crate::squares::{min_radius_bicriteria_threaded, squares_sc, SquaresOutcome};
use crate::verify::{cover_radius, is_solidarity_cover, min_coverage, Partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "scp",
    version,
    about = "Solidarity cover solvers, checkers and reductions"
)]
struct Cli {
    /// Add wall-clock times to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a partition against an instance.
    Check(CheckArgs),
    /// Run a solver; without --r the minimum radius is searched.
    Solve {
        #[command(subcommand)]
        solver: SolverCmd,
    },
    /// Search the minimum radius for a partition size.
    MinRadius {
        #[command(subcommand)]
        solver: SolverCmd,
    },
    /// Largest partition size at a radius.
    MaxM {
        #[command(subcommand)]
        solver: MaxMCmd,
    },
    /// Transform instances between graph, metric and planar forms.
    Reduce {
        #[command(subcommand)]
        reduction: ReduceCmd,
    },
    /// Build the gadget cover induced by a 3-coloring.
    FromColoring(FromColoringArgs),
    /// Read a vertex coloring back from a gadget cover.
    ToColoring(ToColoringArgs),
    /// Generate a seeded instance.
    Gen {
        #[command(subcommand)]
        generator: GenCmd,
    },
    /// Plot a planar partition as SVG.
    Render(RenderArgs),
    /// Compare solver radii against the exact optimum over a suite.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Node cap for the exact search.
    #[arg(long, default_value_t = 200_000_000)]
    budget_nodes: u64,
    /// Time cap for the exact search, in seconds.
    #[arg(long, default_value_t = 120.0)]
    timeout: f64,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, Failure> {
        if !(self.timeout.is_finite() && self.timeout > 0.0) {
            return Err(Failure::input(format!(
                "timeout must be positive, got {}",
                self.timeout
            )));
        }
        Ok(SearchBudget::new(
            self.budget_nodes,
            Some(Duration::from_secs_f64(self.timeout)),
        )?)
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    partition: PathBuf,
    /// Radius to check at; defaults to the radius in the partition file.
    #[arg(long)]
    r: Option<f64>,
    /// Write the partition back with its verified flag set, if it passes.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    /// Worker threads for the candidate radius scan.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Partition file to write when the result verifies.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SolverCmd {
    /// Farthest-point 3-approximation.
    Greedy(SolveArgs),
    /// Grid bicriteria scheme for planar points.
    Bicriteria(SolveArgs),
    /// Exhaustive search.
    Exact(SolveArgs),
}

#[derive(Args, Debug)]
struct MaxMArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    r: f64,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand, Debug)]
enum MaxMCmd {
    Exact(MaxMArgs),
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    r: Option<f64>,
    /// Output document; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    /// Graph document to its shortest-path metric.
    HopMetric(ReduceArgs),
    /// Instance to the graph of pairs within --r.
    UnitBall(ReduceArgs),
    /// Planar orthogonal drawing to its point gadget.
    Gadget(ReduceArgs),
}

#[derive(Args, Debug)]
struct FromColoringArgs {
    /// Planar orthogonal drawing.
    #[arg(long)]
    instance: PathBuf,
    /// Comma-separated colors in {0,1,2}, one per vertex.
    #[arg(long, value_delimiter = ',')]
    coloring: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ToColoringArgs {
    /// Planar orthogonal drawing.
    #[arg(long)]
    instance: PathBuf,
    /// Partition of the drawing's gadget points.
    #[arg(long)]
    partition: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Uniform points in a square.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        box_side: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform discs on a lattice.
    Clustered {
        #[arg(long)]
        clusters: usize,
        #[arg(long)]
        per_cluster: usize,
        #[arg(long)]
        cluster_radius: f64,
        #[arg(long, default_value_t = 0.0)]
        separation: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    partition: PathBuf,
    /// Draw radius circles around assigned points.
    #[arg(long)]
    r: Option<f64>,
    /// SVG file; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Suite descriptor (JSON).
    #[arg(long)]
    suite: PathBuf,
    /// Exit with status 3 if any row is indeterminate.
    #[arg(long)]
    strict: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[command(flatten)]
    budget: BudgetArgs,
}

/// A command that stopped with a diagnostic.
#[derive(Debug)]
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            status: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e == Error::BudgetExhausted {
            EXIT_BUDGET
        } else {
            EXIT_INPUT
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

/// What a command prints to stdout, and its exit status.
struct Output {
    body: String,
    status: i32,
}

impl Output {
    fn report(report: Value, status: i32) -> Self {
        let mut body = serde_json::to_string_pretty(&report).expect("reports serialize");
        body.push('\n');
        Self { body, status }
    }
}

type CmdResult = Result<Output, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    let started = Instant::now();
    let result = dispatch(&cli.command, cli.timing);
    if cli.timing {
        let _ = writeln!(
            stderr,
            "scp: finished in {:.3} ms",
            started.elapsed().as_secs_f64() * 1e3
        );
    }
    match result {
        Ok(out) => {
            if stdout.write_all(out.body.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            out.status
        }
        Err(f) => {
            let _ = writeln!(stderr, "scp: {}", f.message);
            f.status
        }
    }
}

fn dispatch(command: &Command, timing: bool) -> CmdResult {
    match command {
        Command::Check(a) => check(a),
        Command::Solve { solver } => solve(solver, false),
        Command::MinRadius { solver } => solve(solver, true),
        Command::MaxM {
            solver: MaxMCmd::Exact(a),
        } => max_m(a),
        Command::Reduce { reduction } => reduce(reduction),
        Command::FromColoring(a) => from_coloring(a),
        Command::ToColoring(a) => to_coloring(a),
        Command::Gen { generator } => generate(generator),
        Command::Render(a) => render(a),
        Command::Bench(a) => bench(a, timing),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn load_file(path: &Path) -> Result<InstanceFile, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(load_file(path)?.document.into_instance()?)
}

fn load_planar(path: &Path) -> Result<PlanarOrthogonalGraph, Failure> {
    match load_file(path)?.document {
        Document::Planar(g) => Ok(g),
        other => Err(Failure::input(format!(
            "{}: expected a planar-orthogonal document, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn load_partition(path: &Path) -> Result<PartitionFile, Failure> {
    parse_partition(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn radius(r: f64) -> Result<Radius, Failure> {
    Ok(Radius::new(r)?)
}

fn real(x: f64) -> Value {
    json!(canonical(x))
}

/// Writes the document to `out`, or prints it.
fn emit_document(file: &InstanceFile, out: Option<&Path>, summary: Value) -> CmdResult {
    let text = write_instance(file);
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Output::report(summary, EXIT_OK))
        }
        None => Ok(Output {
            body: text,
            status: EXIT_OK,
        }),
    }
}

/// Re-checks a solver partition, then writes it when asked. A partition that
/// fails the checker is never reported.
fn accept(inst: &Instance, p: &Partition, at: Radius, out: Option<&Path>) -> Result<(), Failure> {
    if !is_solidarity_cover(inst, p, at) {
        return Err(Failure {
            status: EXIT_INFEASIBLE,
            message: format!("solver output failed verification at radius {at}"),
        });
    }
    if let Some(path) = out {
        let mut file = PartitionFile::new(p, Some(at.value()));
        file.verified = true;
        write_file(path, &write_partition(&file))?;
    }
    Ok(())
}

fn check(a: &CheckArgs) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let file = load_partition(&a.partition)?;
    let p = file.partition_for(&inst)?;
    let r = match a.r.or(file.radius) {
        Some(r) => radius(r)?,
        None => {
            return Err(Failure::input(
                "no radius given and the partition file has none",
            ))
        }
    };
    let valid = is_solidarity_cover(&inst, &p, r);
    let tight = cover_radius(&inst, &p).ok().map(|c| real(c.value()));
    if valid {
        if let Some(path) = &a.out {
            let mut checked = PartitionFile::new(&p, Some(r.value()));
            checked.verified = true;
            write_file(path, &write_partition(&checked))?;
        }
    }
    let report = json!({
        "command": "check",
        "m": p.m(),
        "r": real(r.value()),
        "valid": valid,
        "exhaustive": p.is_exhaustive(),
        "min_coverage": min_coverage(&inst, &p, r),
        "cover_radius": tight,
    });
    Ok(Output::report(
        report,
        if valid { EXIT_OK } else { EXIT_INFEASIBLE },
    ))
}

fn search_report(solver: &str, search: &RadiusSearch, m_out: usize, cover_at: Radius) -> Value {
    json!({
        "command": "min-radius",
        "solver": solver,
        "status": "feasible",
        "radius": real(search.radius.value()),
        "cover_radius": real(cover_at.value()),
        "m": m_out,
        "candidates_scanned": search.candidates_scanned,
        "candidates_total": search.candidates_total,
        "assignment": search.partition.assignment(),
    })
}

fn solve(cmd: &SolverCmd, force_scan: bool) -> CmdResult {
    let (name, a) = match cmd {
        SolverCmd::Greedy(a) => ("greedy", a),
        SolverCmd::Bicriteria(a) => ("bicriteria", a),
        SolverCmd::Exact(a) => ("exact", a),
    };
    if a.threads == 0 {
        return Err(Failure::input("--threads must be at least 1"));
    }
    let inst = load_instance(&a.instance)?;
    let out = a.out.as_deref();
    let r = match (force_scan, a.r) {
        (false, Some(r)) => Some(radius(r)?),
        _ => None,
    };
    match (name, r) {
        ("greedy", Some(r)) => match greedy_sc(&inst, a.m, r)? {
            GreedyOutcome::Cover { partition, trace } => {
                let at = r.scaled(3.0)?;
                accept(&inst, &partition, at, out)?;
                let report = json!({
                    "command": "solve", "solver": name, "status": "feasible", "m": a.m,
                    "r": real(r.value()), "cover_radius": real(at.value()),
                    "centers": trace.centers, "assignment": partition.assignment(),
                });
                Ok(Output::report(report, EXIT_OK))
            }
            GreedyOutcome::Infeasible {
                center, ball_size, ..
            } => {
                let report = json!({
                    "command": "solve", "solver": name, "status": "infeasible", "m": a.m,
                    "r": real(r.value()), "center": center, "ball_size": ball_size,
                });
                Ok(Output::report(report, EXIT_INFEASIBLE))
            }
        },
        ("greedy", None) => {
            let s = min_radius_greedy_threaded(&inst, a.m, a.threads)?;
            let at = s.radius.scaled(3.0)?;
            accept(&inst, &s.partition, at, out)?;
            Ok(Output::report(search_report(name, &s, a.m, at), EXIT_OK))
        }
        ("bicriteria", Some(r)) => match squares_sc(&inst, a.m, a.beta, r)? {
            SquaresOutcome::Cover {
                partition, params, ..
            } => {
                let at = r.scaled(a.beta)?;
                accept(&inst, &partition, at, out)?;
                let report = json!({
                    "command": "solve", "solver": name, "status": "feasible", "m": a.m,
                    "m_prime": params.m_prime, "square_bound": params.square_bound,
                    "beta": real(a.beta), "r": real(r.value()), "cover_radius": real(at.value()),
                    "assignment": partition.assignment(),
                });
                Ok(Output::report(report, EXIT_OK))
            }
            SquaresOutcome::Infeasible { params, .. } => {
                let report = json!({
                    "command": "solve", "solver": name, "status": "infeasible", "m": a.m,
                    "m_prime": params.m_prime, "square_bound": params.square_bound,
                    "beta": real(a.beta), "r": real(r.value()),
                });
                Ok(Output::report(report, EXIT_INFEASIBLE))
            }
        },
        ("bicriteria", None) => {
            let s = min_radius_bicriteria_threaded(&inst, a.m, a.beta, a.threads)?;
            let at = s.radius.scaled(a.beta)?;
            accept(&inst, &s.partition, at, out)?;
            let mut report = search_report(name, &s, s.partition.m(), at);
            report["beta"] = real(a.beta);
            Ok(Output::report(report, EXIT_OK))
        }
        ("exact", Some(r)) => {
            let decision = exact_decide(&inst, a.m, r, a.budget.budget()?)?;
            let mut report = json!({
                "command": "solve", "solver": name, "m": a.m, "r": real(r.value()),
            });
            let status = match &decision {
                Decision::Feasible(p) => {
                    accept(&inst, p, r, out)?;
                    report["status"] = json!("feasible");
                    report["assignment"] = json!(p.assignment());
                    EXIT_OK
                }
                Decision::Infeasible => {
                    report["status"] = json!("infeasible");
                    EXIT_INFEASIBLE
                }
                Decision::Indeterminate => {
                    report["status"] = json!("indeterminate");
                    EXIT_BUDGET
                }
            };
            Ok(Output::report(report, status))
        }
        _ => {
            let budget = a.budget.budget()?;
            let r_star = exact_min_radius(&inst, a.m, budget)?;
            let Decision::Feasible(p) = exact_decide(&inst, a.m, r_star, budget)? else {
                return Err(Error::BudgetExhausted.into());
            };
            accept(&inst, &p, r_star, out)?;
            let report = json!({
                "command": "min-radius", "solver": name, "status": "feasible", "m": a.m,
                "radius": real(r_star.value()), "cover_radius": real(r_star.value()),
                "candidates_total": inst.candidate_radii().len(),
                "assignment": p.assignment(),
            });
            Ok(Output::report(report, EXIT_OK))
        }
    }
}

fn max_m(a: &MaxMArgs) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let r = radius(a.r)?;
    let m = exact_max_m(&inst, r, a.budget.budget()?)?;
    Ok(Output::report(
        json!({"command": "max-m", "solver": "exact", "r": real(r.value()), "max_m": m}),
        EXIT_OK,
    ))
}

fn reduce(cmd: &ReduceCmd) -> CmdResult {
    match cmd {
        ReduceCmd::HopMetric(a) => {
            let g = match load_file(&a.instance)?.document {
                Document::Graph(g) => g,
                Document::Instance(Instance::HopGraph(h)) => h.graph().clone(),
                other => {
                    return Err(Failure::input(format!(
                        "expected a graph document, found {}",
                        other.kind()
                    )))
                }
            };
            let metric = graph_to_hop_metric(&g)?;
            let summary =
                json!({"command": "reduce", "reduction": "hop-metric", "n": metric.len()});
            emit_document(&InstanceFile::from(metric), a.out.as_deref(), summary)
        }
        ReduceCmd::UnitBall(a) => {
            let inst = load_instance(&a.instance)?;
            let r = radius(a.r.ok_or_else(|| Failure::input("unit-ball needs --r"))?)?;
            let g = unit_ball_graph(&inst, r);
            let summary = json!({
                "command": "reduce", "reduction": "unit-ball", "r": real(r.value()),
                "n": g.n(), "edges": g.edge_count(), "connected": g.is_connected(),
            });
            emit_document(
                &InstanceFile::new(Document::Graph(g)),
                a.out.as_deref(),
                summary,
            )
        }
        ReduceCmd::Gadget(a) => {
            let drawing = load_planar(&a.instance)?;
            let gadget = coloring_gadget(&drawing)?;
            let roles: Vec<&str> = gadget.roles().iter().map(|r| r.label()).collect();
            let meta = Metadata {
                name: Some("coloring-gadget".into()),
                seed: None,
                generator: Some(json!({"reduction": "coloring-gadget", "roles": roles})),
            };
            let summary = json!({
                "command": "reduce", "reduction": "gadget",
                "vertices": drawing.vertex_count(), "edges": drawing.edge_count(),
                "points": gadget.points().len(),
            });
            let file = InstanceFile::from(gadget.instance().clone()).with_meta(meta);
            emit_document(&file, a.out.as_deref(), summary)
        }
    }
}

fn from_coloring(a: &FromColoringArgs) -> CmdResult {
    let drawing = load_planar(&a.instance)?;
    let gadget = coloring_gadget(&drawing)?;
    let p = cover_from_coloring(&gadget, &a.coloring)?;
    let one = Radius::new(1.0)?;
    accept(gadget.instance(), &p, one, a.out.as_deref())?;
    let report = json!({
        "command": "from-coloring", "status": "feasible", "m": 3, "r": real(1.0),
        "points": gadget.points().len(), "assignment": p.assignment(),
    });
    Ok(Output::report(report, EXIT_OK))
}

fn to_coloring(a: &ToColoringArgs) -> CmdResult {
    let drawing = load_planar(&a.instance)?;
    let gadget = coloring_gadget(&drawing)?;
    let p = load_partition(&a.partition)?.partition_for(gadget.instance())?;
    let r = radius(a.r)?;
    if !is_solidarity_cover(gadget.instance(), &p, r) {
        let report =
            json!({"command": "to-coloring", "status": "infeasible", "r": real(r.value())});
        return Ok(Output::report(report, EXIT_INFEASIBLE));
    }
    let coloring = coloring_from_cover(&gadget, &p, r)?;
    let report = json!({
        "command": "to-coloring", "status": "feasible", "r": real(r.value()),
        "coloring": coloring, "proper": drawing.is_proper_coloring(&coloring),
    });
    Ok(Output::report(report, EXIT_OK))
}

fn generate(cmd: &GenCmd) -> CmdResult {
    let (inst, seed, params, out) = match cmd {
        GenCmd::Random {
            n,
            box_side,
            seed,
            out,
        } => (
            gen_random_points(*n, *box_side, *seed)?,
            *seed,
            json!({"generator": "random", "n": n, "box_side": real(*box_side)}),
            out,
        ),
        GenCmd::Clustered {
            clusters,
            per_cluster,
            cluster_radius,
            separation,
            seed,
            out,
        } => (
            gen_clustered(*clusters, *per_cluster, *cluster_radius, *separation, *seed)?,
            *seed,
            json!({
                "generator": "clustered", "clusters": clusters, "per_cluster": per_cluster,
                "cluster_radius": real(*cluster_radius), "separation": real(*separation),
            }),
            out,
        ),
    };
    let meta = Metadata {
        name: None,
        seed: Some(seed),
        generator: Some(params.clone()),
    };
    let summary = json!({"command": "gen", "n": inst.len(), "seed": seed, "params": params});
    emit_document(
        &InstanceFile::from(inst).with_meta(meta),
        out.as_deref(),
        summary,
    )
}

fn render(a: &RenderArgs) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let p = load_partition(&a.partition)?.partition_for(&inst)?;
    let r = a.r.map(radius).transpose()?;
    let svg = render_svg(&inst, &p, r)?;
    match &a.out {
        Some(path) => {
            write_file(path, &svg)?;
            let report = json!({"command": "render", "points": inst.len(), "m": p.m()});
            Ok(Output::report(report, EXIT_OK))
        }
        None => Ok(Output {
            body: svg,
            status: EXIT_OK,
        }),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SuiteEntry {
    Path(PathBuf),
    Detailed { path: PathBuf, m: Option<usize> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Suite {
    instances: Vec<SuiteEntry>,
    #[serde(default = "default_solvers")]
    solvers: Vec<String>,
    #[serde(default = "default_m")]
    m: usize,
    #[serde(default = "default_beta")]
    beta: f64,
}

fn default_solvers() -> Vec<String> {
    vec!["greedy".into()]
}

fn default_m() -> usize {
    2
}

fn default_beta() -> f64 {
    2.0
}

fn ratio(r_hat: f64, r_star: f64) -> f64 {
    if r_star == 0.0 {
        if r_hat == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        r_hat / r_star
    }
}

fn bench(a: &BenchArgs, timing: bool) -> CmdResult {
    if a.threads == 0 {
        return Err(Failure::input("--threads must be at least 1"));
    }
    let suite: Suite = serde_json::from_str(&read(&a.suite)?)
        .map_err(|e| Failure::input(format!("{}: {e}", a.suite.display())))?;
    if suite.instances.is_empty() {
        return Err(Failure::input("suite lists no instances"));
    }
    if let Some(s) = suite
        .solvers
        .iter()
        .find(|s| !matches!(s.as_str(), "greedy" | "bicriteria"))
    {
        return Err(Failure::input(format!(
            "unknown bench solver {s:?}; expected greedy or bicriteria"
        )));
    }
    let base = a.suite.parent().unwrap_or(Path::new("."));
    let budget = a.budget.budget()?;

    let mut rows = Vec::new();
    let (mut violations, mut indeterminate) = (0usize, 0usize);
    for entry in &suite.instances {
        let (path, m) = match entry {
            SuiteEntry::Path(p) => (p, suite.m),
            SuiteEntry::Detailed { path, m } => (path, m.unwrap_or(suite.m)),
        };
        let inst = load_instance(&base.join(path))?;
        let started = Instant::now();
        let r_star = match exact_min_radius(&inst, m, budget) {
            Ok(r) => Some(r.value()),
            Err(Error::BudgetExhausted) => None,
            Err(e) => return Err(Failure::input(format!("{}: {e}", path.display()))),
        };
        let oracle_ms = started.elapsed().as_secs_f64() * 1e3;
        for solver in &suite.solvers {
            let started = Instant::now();
            let (search, bound) = match solver.as_str() {
                "greedy" => (min_radius_greedy_threaded(&inst, m, a.threads), 3.0),
                _ => (
                    min_radius_bicriteria_threaded(&inst, m, suite.beta, a.threads),
                    suite.beta,
                ),
            };
            let solver_ms = started.elapsed().as_secs_f64() * 1e3;
            let mut row = json!({
                "instance": path.display().to_string(), "solver": solver, "m": m,
                "bound": real(bound),
            });
            match search {
                Ok(s) => {
                    let at = s.radius.scaled(bound)?;
                    let verified = is_solidarity_cover(&inst, &s.partition, at);
                    row["r_hat"] = real(s.radius.value());
                    row["m_out"] = json!(s.partition.m());
                    row["verified"] = json!(verified);
                    row["candidates_scanned"] = json!(s.candidates_scanned);
                    match r_star {
                        Some(r_star) => {
                            let q = ratio(s.radius.value(), r_star);
                            let ok = verified && q <= bound + 1e-9;
                            if !ok {
                                violations += 1;
                            }
                            row["r_star"] = real(r_star);
                            row["ratio"] = if q.is_finite() { real(q) } else { Value::Null };
                            row["status"] = json!(if ok { "ok" } else { "violation" });
                        }
                        None => {
                            indeterminate += 1;
                            row["r_star"] = Value::Null;
                            row["ratio"] = Value::Null;
                            row["status"] = json!("indeterminate");
                        }
                    }
                }
                Err(e) => {
                    row["status"] = json!("unsupported");
                    row["reason"] = json!(e.to_string());
                }
            }
            if timing {
                row["oracle_ms"] = real(oracle_ms);
                row["wall_ms"] = real(solver_ms);
            }
            rows.push(row);
        }
    }
    let status = if violations > 0 {
        EXIT_INFEASIBLE
    } else if indeterminate > 0 && a.strict {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    let report = json!({
        "command": "bench", "rows": rows, "violations": violations, "indeterminate": indeterminate,
    });
    Ok(Output::report(report, status))
}
