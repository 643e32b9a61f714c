//! polyskel: generate polytope documents, orient their skeletons by a cost
//! vector, and run the full battery of order-theoretic and topological
//! checks with machine-readable reports.

mod document;
mod dot;
mod pipeline;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use polyskel::exact::{parse_rat, rat_int, rat_string};
use polyskel::generators::{
    gen_associahedron, gen_cube, gen_klee_minty, gen_permutahedron, gen_simplex, gen_zonotope,
};
use polyskel::orient::descending_generic_cost;
use polyskel::paths::{pivot_walk, PivotRule, Scope};
use polyskel::{OrientedSkeleton, Polytope, RatVector};

use document::{parse_cost, PolytopeDocument};
use pipeline::{run_analysis, AnalyzeOptions, OrientationSource, Status, CHECK_KEYS};

/// Input problems exit with 2; failed expectations and report differences
/// exit with 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Check(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

#[derive(Parser)]
#[command(
    name = "polyskel",
    version,
    about = "Exact analysis of cost-oriented polytope skeletons"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a polytope document from a built-in family.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output path for the document (stdout when omitted).
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run the gated check pipeline and emit an analysis report.
    Analyze {
        doc: PathBuf,
        /// Comma-separated rational cost vector (family default when omitted).
        #[arg(long)]
        cost: Option<String>,
        /// JSON file with explicit arcs [[u,v],...] instead of a cost vector.
        #[arg(long)]
        orientation: Option<PathBuf>,
        /// Face scope for the nonrevisiting check.
        #[arg(long, value_enum, default_value_t = ScopeArg::Facets)]
        scope: ScopeArg,
        /// Largest open-interval size for homology computations.
        #[arg(long, default_value_t = 64)]
        max_interval: usize,
        /// Assert a check's outcome, e.g. "hasse", "conjecture-pass",
        /// "hasse-fail"; exits 1 when violated. Repeatable.
        #[arg(long = "expect")]
        expect: Vec<String>,
        /// Write the JSON report here.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Omit timings so repeated runs are byte-identical.
        #[arg(long)]
        no_timings: bool,
    },
    /// Simulate a pivot walk from the source to the sink.
    Walk {
        doc: PathBuf,
        #[arg(long)]
        cost: Option<String>,
        #[arg(long)]
        orientation: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RuleArg::LeastIndex)]
        rule: RuleArg,
        /// Seed for the random rule.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Export the oriented skeleton as a Graphviz digraph.
    ExportDot {
        doc: PathBuf,
        #[arg(long)]
        cost: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare two analysis reports, ignoring timings.
    ReportDiff { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum Family {
    /// Cube [-1,1]^d.
    Cube {
        #[arg(long)]
        d: usize,
    },
    /// Deformed cube on which steepest paths visit every vertex.
    KleeMinty {
        #[arg(long)]
        d: usize,
        /// Distortion in (0, 1/2).
        #[arg(long, default_value = "1/4")]
        eps: String,
    },
    /// Convex hull of all permutations of (1, ..., n).
    Permutahedron {
        #[arg(long)]
        n: usize,
    },
    /// Loday realization on binary trees with n leaves.
    Associahedron {
        #[arg(long)]
        n: usize,
    },
    /// Standard simplex conv{0, e_1, ..., e_d}.
    Simplex {
        #[arg(long)]
        d: usize,
    },
    /// Minkowski sum of segments, e.g. --generators "1,0;0,1;1,1".
    Zonotope {
        #[arg(long)]
        generators: String,
        #[arg(long, default_value = "zonotope")]
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Facets,
    AllFaces,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    GreatestImprovement,
    LeastIndex,
    Random,
    AdversarialLongest,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Gen { family, out } => cmd_gen(family, out.as_deref()),
        Cmd::Analyze {
            doc,
            cost,
            orientation,
            scope,
            max_interval,
            expect,
            out,
            no_timings,
        } => cmd_analyze(
            &doc,
            cost.as_deref(),
            orientation.as_deref(),
            scope,
            max_interval,
            &expect,
            out.as_deref(),
            no_timings,
        ),
        Cmd::Walk {
            doc,
            cost,
            orientation,
            rule,
            seed,
            out,
        } => cmd_walk(
            &doc,
            cost.as_deref(),
            orientation.as_deref(),
            rule,
            seed,
            out.as_deref(),
        ),
        Cmd::ExportDot { doc, cost, out } => cmd_export_dot(&doc, cost.as_deref(), out.as_deref()),
        Cmd::ReportDiff { a, b } => cmd_report_diff(&a, &b),
    }
}

fn cmd_gen(family: Family, out: Option<&Path>) -> Result<(), CliError> {
    let p = match family {
        Family::Cube { d } => gen_cube(d),
        Family::KleeMinty { d, eps } => {
            let eps = parse_rat(&eps).map_err(|e| CliError::input(format!("bad eps: {e}")))?;
            gen_klee_minty(d, &eps)
        }
        Family::Permutahedron { n } => gen_permutahedron(n),
        Family::Associahedron { n } => gen_associahedron(n),
        Family::Simplex { d } => gen_simplex(d),
        Family::Zonotope { generators, name } => {
            let gens = generators
                .split(';')
                .map(|v| parse_cost(v.trim()))
                .collect::<Result<Vec<RatVector>, CliError>>()?;
            gen_zonotope(name, &gens)
        }
    }
    .map_err(|e| CliError::input(e.to_string()))?;
    let doc = PolytopeDocument::from_polytope(&p);
    let counts = format!(
        "{}: {} vertices, {} facets, dimension {}",
        p.name,
        p.vertices.len(),
        p.facets.len(),
        p.dim
    );
    match out {
        Some(path) => {
            write_text(path, &doc.to_json())?;
            println!("{counts}");
            println!("document written to {}", path.display());
        }
        None => {
            eprintln!("{counts}");
            print!("{}", doc.to_json());
        }
    }
    Ok(())
}

/// Family-specific generic defaults: geometric descending coordinates for
/// the order polytopes, the last coordinate axis for the deformed cubes,
/// binary weights for everything else.
fn default_cost(p: &Polytope) -> RatVector {
    let ambient = p.vertices[0].len();
    if p.name.starts_with("permutahedron") || p.name.starts_with("associahedron") {
        descending_generic_cost(p)
    } else if p.name.starts_with("klee_minty") {
        let mut cost = vec![rat_int(0); ambient];
        cost[ambient - 1] = rat_int(1);
        cost
    } else {
        (0..ambient).map(|i| rat_int(1i64 << i.min(62))).collect()
    }
}

fn load_orientation(path: &Path) -> Result<Vec<(usize, usize)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))
}

fn orientation_source(
    p: &Polytope,
    cost: Option<&str>,
    orientation: Option<&Path>,
) -> Result<OrientationSource, CliError> {
    match (cost, orientation) {
        (Some(_), Some(_)) => Err(CliError::input(
            "pass either --cost or --orientation, not both",
        )),
        (_, Some(path)) => Ok(OrientationSource::Explicit(load_orientation(path)?)),
        (Some(text), None) => Ok(OrientationSource::Cost(parse_cost(text)?)),
        (None, None) => Ok(OrientationSource::Cost(default_cost(p))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    doc: &Path,
    cost: Option<&str>,
    orientation: Option<&Path>,
    scope: ScopeArg,
    max_interval: usize,
    expect: &[String],
    out: Option<&Path>,
    no_timings: bool,
) -> Result<(), CliError> {
    let p = PolytopeDocument::load(doc)?.to_polytope()?;
    let source = orientation_source(&p, cost, orientation)?;
    let opts = AnalyzeOptions {
        scope: match scope {
            ScopeArg::Facets => Scope::FacetsOnly,
            ScopeArg::AllFaces => Scope::AllFaces,
        },
        max_interval,
        max_atoms: 12,
        timings: !no_timings,
    };
    let report = run_analysis(&p, &source, &opts)?;

    println!(
        "analysis of {} ({} vertices, {} facets, dimension {}, {})",
        report.name,
        report.vertices,
        report.n,
        report.d,
        if report.simple { "simple" } else { "not simple" }
    );
    for line in report.summary_lines() {
        println!("  {line}");
    }
    if let Some(path) = out {
        write_text(path, &report.to_json())?;
        println!("report written to {}", path.display());
    }

    let mut unmet = Vec::new();
    for raw in expect {
        let (key, wanted) = parse_expectation(raw);
        let Some(actual) = report.status_of(&key) else {
            return Err(CliError::input(format!(
                "unknown check {key:?} in --expect (known: {})",
                CHECK_KEYS.join(", ")
            )));
        };
        if actual != wanted {
            unmet.push(format!("{key}: expected {wanted}, got {actual}"));
        }
    }
    if unmet.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(unmet.join("; ")))
    }
}

/// "hasse" and "hasse-pass" assert a pass; "hasse-fail" asserts a fail.
fn parse_expectation(raw: &str) -> (String, Status) {
    let norm = raw.replace('-', "_");
    if let Some(key) = norm.strip_suffix("_fail") {
        (key.to_string(), Status::Fail)
    } else if let Some(key) = norm.strip_suffix("_pass") {
        (key.to_string(), Status::Pass)
    } else {
        (norm, Status::Pass)
    }
}

#[derive(Serialize)]
struct TraceDoc {
    rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    steps: usize,
    path: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cost_values: Option<Vec<String>>,
}

fn cmd_walk(
    doc: &Path,
    cost: Option<&str>,
    orientation: Option<&Path>,
    rule: RuleArg,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let p = PolytopeDocument::load(doc)?.to_polytope()?;
    let source = orientation_source(&p, cost, orientation)?;
    let o = match &source {
        OrientationSource::Cost(c) => OrientedSkeleton::orient(&p, c.clone())
            .map_err(|e| CliError::input(format!("cannot orient: {e}"))),
        OrientationSource::Explicit(arcs) => OrientedSkeleton::explicit(&p, arcs.clone())
            .map_err(|e| CliError::input(format!("bad orientation: {e}"))),
    }?;
    let (pivot, rule_name) = match rule {
        RuleArg::GreatestImprovement => (PivotRule::GreatestImprovement, "greatest-improvement"),
        RuleArg::LeastIndex => (PivotRule::LeastIndex, "least-index"),
        RuleArg::Random => (PivotRule::Random(seed), "random"),
        RuleArg::AdversarialLongest => (PivotRule::AdversarialLongest, "adversarial-longest"),
    };
    let trace = pivot_walk(&o, pivot, None).map_err(|e| CliError::input(e.to_string()))?;

    println!("{rule_name} walk on {}", p.name);
    for (i, &v) in trace.path.iter().enumerate() {
        let coords: Vec<String> = p.vertices[v].iter().map(rat_string).collect();
        match o.cost_of(v) {
            Some(c) => println!("  step {i}: vertex {v} = ({})  c = {}", coords.join(","), rat_string(&c)),
            None => println!("  step {i}: vertex {v} = ({})", coords.join(",")),
        }
    }
    println!("steps: {}", trace.steps);

    if let Some(path) = out {
        let doc = TraceDoc {
            rule: rule_name.to_string(),
            seed: matches!(rule, RuleArg::Random).then_some(seed),
            steps: trace.steps,
            path: trace.path.clone(),
            cost_values: o.cost.as_ref().map(|_| {
                trace
                    .path
                    .iter()
                    .map(|&v| rat_string(&o.cost_of(v).expect("cost-derived")))
                    .collect()
            }),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("trace serializes");
        text.push('\n');
        write_text(path, &text)?;
        println!("trace written to {}", path.display());
    }
    Ok(())
}

fn cmd_export_dot(doc: &Path, cost: Option<&str>, out: Option<&Path>) -> Result<(), CliError> {
    let p = PolytopeDocument::load(doc)?.to_polytope()?;
    let cost = match cost {
        Some(text) => parse_cost(text)?,
        None => default_cost(&p),
    };
    // A tied cost means no orientation exists to draw: an input error.
    let o = OrientedSkeleton::orient(&p, cost)
        .map_err(|e| CliError::input(format!("cannot orient: {e}")))?;
    let text = dot::export_dot(&o);
    match out {
        Some(path) => {
            write_text(path, &text)?;
            println!("dot written to {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_report_diff(a: &Path, b: &Path) -> Result<(), CliError> {
    let mut va = load_value(a)?;
    let mut vb = load_value(b)?;
    for v in [&mut va, &mut vb] {
        if let Value::Object(map) = v {
            map.remove("timings_ms");
        }
    }
    if va == vb {
        println!("reports match (timings ignored)");
        return Ok(());
    }
    println!("reports differ:");
    if let (Value::Object(ma), Value::Object(mb)) = (&va, &vb) {
        let keys: std::collections::BTreeSet<&String> = ma.keys().chain(mb.keys()).collect();
        for key in keys {
            if ma.get(key) != mb.get(key) {
                println!("  field {key:?} differs");
            }
        }
    }
    Err(CliError::Check(format!(
        "{} and {} differ",
        a.display(),
        b.display()
    )))
}

fn load_value(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}
