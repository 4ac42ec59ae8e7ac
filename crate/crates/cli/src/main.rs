//! `stabgraph`: stability analysis, gadgets, reductions, formula constructions and the
//! law harness from the command line.
//!
//! Exit codes: 0 success, 1 violation or failed `--expect`, 2 usage or input error,
//! 3 solver budget exceeded.

mod pipelines;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stabgraph::cnf::{self, parse_cnf, write_cnf_with_comments, CnfConstruction};
use stabgraph::gadgets::{beta_stabilize_edges, chi_stabilize_edges, two_way_gadget_all, two_way_gadget_edge};
use stabgraph::solvers::graph_number_with;
use stabgraph::stability::{AnalysisError, Classes};
use stabgraph::verify::{registry, run_law, LawReport, Overrides};
use stabgraph::{
    analyze_with, parse_dimacs, write_dimacs_with_comments, AnalysisOptions, Budget, CnfFormula, ConstructionResult, Graph,
    GraphNumber, SolveError, StabilityReport,
};

#[derive(Parser)]
#[command(name = "stabgraph", version, about = "Stability, criticality and unfrozenness of graph numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-element statuses and graph verdicts for one graph number.
    Analyze {
        #[arg(long, value_enum)]
        xi: Xi,
        /// Also decide the k-restricted verdicts.
        #[arg(long)]
        k: Option<usize>,
        /// Exit 1 unless the graph has this property.
        #[arg(long, value_enum)]
        expect: Option<Property>,
        #[arg(long)]
        json: bool,
        /// Include wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        graph: PathBuf,
    },
    /// Apply an edge gadget.
    Gadget {
        #[arg(value_enum)]
        name: GadgetName,
        /// `a-b,c-d` with 1-based vertex ids, `all`, or `@file`.
        #[arg(long, default_value = "all")]
        edges: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        graph: PathBuf,
    },
    /// Run a reduction pipeline.
    Reduce {
        #[arg(value_enum)]
        pipeline: pipelines::Pipeline,
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Second output path, for pipelines with two output graphs.
        #[arg(long)]
        out_h: Option<PathBuf>,
        /// Re-derive the reduction's biconditional with exact solvers.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a CNF construction or the stability analysis of a formula.
    Formula {
        #[arg(value_enum)]
        construction: FormulaOp,
        cnf: PathBuf,
        /// Second formula, for the OR constructions.
        #[arg(long)]
        second: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run registered laws against generated instances.
    Verify {
        /// A law id, or `all`.
        #[arg(default_value = "all")]
        law: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Include elapsed times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        /// List the registered laws and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Xi {
    Alpha,
    Beta,
    Chi,
    Omega,
}

impl From<Xi> for GraphNumber {
    fn from(x: Xi) -> Self {
        match x {
            Xi::Alpha => GraphNumber::Alpha,
            Xi::Beta => GraphNumber::Beta,
            Xi::Chi => GraphNumber::Chi,
            Xi::Omega => GraphNumber::Omega,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Stable,
    VertexStable,
    Unfrozen,
    VertexUnfrozen,
    TwoWayStable,
    VertexTwoWayStable,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetName {
    /// χ-stabilize the selected edges in one application.
    ChiStabilize,
    /// Replace each selected edge by the β-stabilizing 4-cycle.
    BetaStabilize,
    /// Attach the two-way β gadget to one edge, or to all edges.
    TwoWay,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaOp {
    /// Satisfiability and clause-deletion stability.
    Stability,
    /// Equivalent exact-3CNF.
    Exact3,
    UnsatPadding,
    SatToStable,
    SatToStableUnpadded,
    /// Clause product of two formulas.
    Or2Product,
    /// Clause product converted to exact-3CNF.
    Or2,
}

/// Marker for errors that mean "bad invocation or input".
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(SolveError::BudgetExceeded { .. }) = cause.downcast_ref::<SolveError>() {
            return 3;
        }
        if let Some(AnalysisError::Solver {
            source: SolveError::BudgetExceeded { .. },
            ..
        }) = cause.downcast_ref::<AnalysisError>()
        {
            return 3;
        }
    }
    2
}

fn run(cli: Cli) -> Result<u8> {
    let budget = budget_from_env()?;
    match cli.command {
        Command::Analyze {
            xi,
            k,
            expect,
            json,
            timings,
            graph,
        } => analyze_cmd(&read_graph(&graph)?, xi.into(), k, expect, json, timings, budget),
        Command::Gadget {
            name,
            edges,
            out,
            json,
            graph,
        } => gadget_cmd(&read_graph(&graph)?, name, &edges, out.as_deref(), json, budget),
        Command::Reduce {
            pipeline,
            inputs,
            out,
            out_h,
            verify,
            json,
        } => pipelines::reduce_cmd(pipeline, &inputs, &out, out_h.as_deref(), verify, json, budget),
        Command::Formula {
            construction,
            cnf,
            second,
            out,
            json,
        } => formula_cmd(construction, &cnf, second.as_deref(), out.as_deref(), json, budget),
        Command::Verify {
            law,
            seed,
            max_n,
            samples,
            json,
            timings,
            list,
        } => {
            if list {
                return list_laws(json);
            }
            verify_cmd(&law, Overrides { seed, max_n, samples }, json, timings)
        }
    }
}

fn budget_from_env() -> Result<Budget> {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var("STAB_NODE_BUDGET") {
        b.max_nodes = v.trim().parse().map_err(|_| usage(format!("STAB_NODE_BUDGET: '{v}' is not a node count")))?;
    }
    if let Ok(v) = std::env::var("STAB_TIME_BUDGET_S") {
        let s: f64 = v.trim().parse().map_err(|_| usage(format!("STAB_TIME_BUDGET_S: '{v}' is not a number of seconds")))?;
        if !(s.is_finite() && s > 0.0) {
            return Err(usage(format!("STAB_TIME_BUDGET_S must be positive, got {v}")));
        }
        b.max_time = Duration::from_secs_f64(s);
    }
    Ok(b)
}

pub(crate) fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_dimacs(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub(crate) fn read_cnf(path: &Path) -> Result<CnfFormula> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_cnf(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub(crate) fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".provenance.json");
    PathBuf::from(s)
}

/// Writes the DIMACS graph and its provenance sidecar.
pub(crate) fn write_construction(out: &Path, r: &ConstructionResult, header: &str) -> Result<PathBuf> {
    let mut comments = vec![header.to_string()];
    if !r.notes.is_empty() {
        comments.push(r.notes.clone());
    }
    fs::write(out, write_dimacs_with_comments(&r.graph, &comments)).with_context(|| format!("writing {}", out.display()))?;
    let side = sidecar_path(out);
    let text = serde_json::to_string_pretty(&r.sidecar())?;
    fs::write(&side, text + "\n").with_context(|| format!("writing {}", side.display()))?;
    Ok(side)
}

pub(crate) fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn analyze_cmd(
    g: &Graph,
    xi: GraphNumber,
    k: Option<usize>,
    expect: Option<Property>,
    json: bool,
    timings: bool,
    budget: Budget,
) -> Result<u8> {
    let start = Instant::now();
    let opts = AnalysisOptions {
        classes: Classes::ALL,
        k,
        early_exit: false,
        budget,
    };
    let report = analyze_with(g, xi, &opts)?;
    let nodes = graph_number_with(g, xi, budget)?.stats.nodes;
    let expected = expect.map(|p| (p, verdict_of(&report, p)));
    if json {
        let mut v = serde_json::to_value(&report)?;
        v["stats"] = json!({ "nodes": nodes });
        if timings {
            v["stats"]["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        print_json(&v);
    } else {
        print_report(&report);
        if timings {
            println!("elapsed: {} ms", start.elapsed().as_millis());
        }
    }
    match expected {
        Some((p, false)) => {
            eprintln!("expected {}, but the graph is not", property_name(p));
            Ok(1)
        }
        _ => Ok(0),
    }
}

fn verdict_of(r: &StabilityReport, p: Property) -> bool {
    let v = r.verdicts;
    let x = match p {
        Property::Stable => v.stable,
        Property::VertexStable => v.vertex_stable,
        Property::Unfrozen => v.unfrozen,
        Property::VertexUnfrozen => v.vertex_unfrozen,
        Property::TwoWayStable => v.two_way_stable,
        Property::VertexTwoWayStable => v.vertex_two_way_stable,
    };
    x == Some(true)
}

fn property_name(p: Property) -> &'static str {
    match p {
        Property::Stable => "stable",
        Property::VertexStable => "vertex-stable",
        Property::Unfrozen => "unfrozen",
        Property::VertexUnfrozen => "vertex-unfrozen",
        Property::TwoWayStable => "two-way-stable",
        Property::VertexTwoWayStable => "vertex-two-way-stable",
    }
}

fn show(x: Option<bool>) -> &'static str {
    match x {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

fn print_report(r: &StabilityReport) {
    println!("{}(G) = {}", r.xi, r.value);
    let v = r.verdicts;
    println!(
        "verdicts: stable={}, vertex_stable={}, unfrozen={}, vertex_unfrozen={}, two_way_stable={}, vertex_two_way_stable={}",
        show(v.stable),
        show(v.vertex_stable),
        show(v.unfrozen),
        show(v.vertex_unfrozen),
        show(v.two_way_stable),
        show(v.vertex_two_way_stable)
    );
    if let Some(kv) = r.k_verdicts {
        let v = kv.verdicts;
        println!(
            "k={}: stable={}, vertex_stable={}, unfrozen={}, two_way_stable={}",
            kv.k,
            show(v.stable),
            show(v.vertex_stable),
            show(v.unfrozen),
            show(v.two_way_stable)
        );
    }
    for s in r.edge_statuses.iter().chain(&r.vertex_statuses).chain(&r.nonedge_statuses) {
        println!("{}: {:?} ({:+})", s.element, s.status, s.delta);
    }
}

/// Parses an edge selector into 0-based edges of `g`; `None` means all edges.
fn parse_edges(g: &Graph, selector: &str) -> Result<Option<Vec<(usize, usize)>>> {
    let selector = selector.trim();
    if selector == "all" {
        return Ok(None);
    }
    let text = match selector.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("cannot read edge list {path}: {e}")))?,
        None => selector.to_string(),
    };
    let mut out = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (a, b) = tok.split_once('-').ok_or_else(|| usage(format!("edge '{tok}' is not of the form a-b")))?;
        let parse = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| usage(format!("'{s}' in edge '{tok}' is not a vertex id")))?;
            if v == 0 || v > g.n() {
                return Err(usage(format!("vertex {v} in edge '{tok}' is outside 1..={}", g.n())));
            }
            Ok(v - 1)
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if !g.has_edge(u, v) {
            return Err(usage(format!("{tok} is not an edge of the graph")));
        }
        out.push((u, v));
    }
    if out.is_empty() {
        return Err(usage("the edge selector is empty"));
    }
    Ok(Some(out))
}

fn gadget_cmd(g: &Graph, name: GadgetName, edges: &str, out: Option<&Path>, json: bool, budget: Budget) -> Result<u8> {
    let selected = parse_edges(g, edges)?;
    let all = g.edges();
    let (xi, label, r) = match name {
        GadgetName::ChiStabilize => (GraphNumber::Chi, "chi-stabilize", chi_stabilize_edges(g, selected.as_deref().unwrap_or(&all))),
        GadgetName::BetaStabilize => (GraphNumber::Beta, "beta-stabilize", beta_stabilize_edges(g, selected.as_deref().unwrap_or(&all))),
        GadgetName::TwoWay => (
            GraphNumber::Beta,
            "two-way",
            match selected.as_deref() {
                None => two_way_gadget_all(g),
                Some([e]) => two_way_gadget_edge(g, *e),
                Some(_) => return Err(usage("two-way takes a single edge or 'all'")),
            },
        ),
    };
    let r = r.map_err(|e| usage(e.to_string()))?;
    let before = graph_number_with(g, xi, budget)?.value;
    let after = graph_number_with(&r.graph, xi, budget)?.value;
    let shift = after as i64 - before as i64;
    let side = match out {
        Some(p) => Some(write_construction(p, &r, &format!("gadget {label}"))?),
        None => None,
    };
    let ok = r.value_shift.is_none_or(|s| s == shift);
    if json {
        print_json(&json!({
            "gadget": label,
            "xi": xi,
            "vertices": r.graph.n(),
            "edges": r.graph.m(),
            "input_value": before,
            "output_value": after,
            "claimed_shift": r.value_shift,
            "shift_matches": ok,
            "output": out.map(|p| p.display().to_string()),
            "sidecar": side.map(|p| p.display().to_string()),
        }));
    } else {
        println!("{label}: {} vertices, {} edges", r.graph.n(), r.graph.m());
        println!("{xi}: {before} -> {after} (claimed shift {:?})", r.value_shift);
        if let (Some(o), Some(s)) = (out, side) {
            println!("wrote {} and {}", o.display(), s.display());
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn formula_cmd(op: FormulaOp, path: &Path, second: Option<&Path>, out: Option<&Path>, json: bool, budget: Budget) -> Result<u8> {
    let f = read_cnf(path)?;
    let other = || -> Result<CnfFormula> {
        let p = second.ok_or_else(|| usage("this construction needs --second"))?;
        read_cnf(p)
    };
    let bad = |e: cnf::CnfError| usage(e.to_string());
    let c: CnfConstruction = match op {
        FormulaOp::Stability => {
            let s = cnf::formula_stability_with(&f, budget)?;
            if json {
                print_json(&serde_json::to_value(&s)?);
            } else {
                println!("satisfiable: {}", s.satisfiable);
                println!("stable: {}", s.stable);
                for (i, sat) in &s.per_clause {
                    println!("without clause {i}: {}", if *sat { "satisfiable" } else { "unsatisfiable" });
                }
            }
            return Ok(0);
        }
        FormulaOp::Exact3 => cnf::to_exact_3cnf(&f),
        FormulaOp::UnsatPadding => cnf::unsat_padding(&f).map_err(bad)?,
        FormulaOp::SatToStable => cnf::sat_to_stable_cnf(&f).map_err(bad)?,
        FormulaOp::SatToStableUnpadded => cnf::sat_to_stable_cnf_unpadded(&f).map_err(bad)?,
        FormulaOp::Or2Product => cnf::or2_product(&f, &other()?),
        FormulaOp::Or2 => cnf::or2_combine(&f, &other()?),
    };
    let text = write_cnf_with_comments(&c.formula, &c.comments());
    match out {
        Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None if !json => print!("{text}"),
        None => {}
    }
    if json {
        print_json(&json!({
            "variables": c.formula.num_vars(),
            "clauses": c.formula.num_clauses(),
            "widths": c.formula.width_histogram(),
            "output": out.map(|p| p.display().to_string()),
            "formula": if out.is_none() { Some(&c.formula) } else { None },
        }));
    } else if let Some(p) = out {
        println!("wrote {} ({} variables, {} clauses)", p.display(), c.formula.num_vars(), c.formula.num_clauses());
    }
    Ok(0)
}

fn list_laws(json: bool) -> Result<u8> {
    if json {
        let v: Vec<Value> = registry()
            .iter()
            .map(|l| json!({"id": l.id, "paper_ref": l.paper_ref, "family": l.family, "oracle": l.oracle, "defaults": l.defaults}))
            .collect();
        print_json(&Value::Array(v));
    } else {
        for l in registry() {
            println!("{:24} {}", l.id, l.paper_ref);
        }
    }
    Ok(0)
}

fn verify_cmd(law: &str, overrides: Overrides, json: bool, timings: bool) -> Result<u8> {
    let reports: Vec<LawReport> = if law == "all" {
        stabgraph::verify::run_all(&overrides)?
    } else {
        vec![run_law(law, &overrides).map_err(|e| usage(e.to_string()))?]
    };
    let passed = reports.iter().all(LawReport::passed);
    if json {
        let mut list = Vec::new();
        for r in &reports {
            let mut v = serde_json::to_value(r)?;
            if !timings {
                v.as_object_mut().ok_or_else(|| anyhow!("report is an object"))?.remove("elapsed_ms");
            }
            list.push(v);
        }
        print_json(&json!({ "passed": passed, "reports": list }));
    } else {
        for r in &reports {
            let time = if timings { format!(" in {} ms", r.elapsed_ms) } else { String::new() };
            println!(
                "{} {:24} {} instances, {} violations{time}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.id,
                r.instances,
                r.violations.len()
            );
            if let Some(v) = r.violations.first() {
                println!("    first counterexample #{}: {}", v.index, v.message);
                println!("    {}", serde_json::to_string(&v.instance)?);
            }
        }
    }
    Ok(if passed { 0 } else { 1 })
}
