//! Command-line verbs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_bisect_core::clustering::build_well_connected_cover;
use planar_bisect_core::cost::{ceil_u64, floor_u64, ScaledCosts};
use planar_bisect_core::cover::DoubleCover;
use planar_bisect_core::cycles::min_cycle_exact_weight;
use planar_bisect_core::framework::{solve_report, SolveConfig, Stage, DEFAULT_MAX_STATES};
use planar_bisect_core::harness::generate::{generate, Family, GeneratorSpec};
use planar_bisect_core::harness::oracle::exact_bipartition;
use planar_bisect_core::harness::{verify, VerifyReport};
use planar_bisect_core::planar::paths::dijkstra;
use planar_bisect_core::planar::VertexId;
use planar_bisect_core::skeleton::build_skeleton;
use planar_bisect_core::spanner::build_spanner;
use planar_bisect_core::{Cost, EmbeddedGraph};
use serde_json::{json, Value};

use crate::instance::{read_instance, write_instance_string};
use crate::ratio::{float, parse_ratio};
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "planar-bisect",
    version,
    about = "Approximate minimum b-bipartition of planar graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded instance file.
    Gen(GenArgs),
    /// Run the approximation scheme.
    Solve(SolveArgs),
    /// Optimum by subset enumeration (at most 24 vertices).
    Exact(ExactArgs),
    /// Skeleton of the dual: cycles, region tree, splice log, charges.
    Skeleton(ParamArgs),
    /// Spanner of the dual with per-tag edge sets.
    Spanner(ParamArgs),
    /// Clustering on the double cover of one skeleton region.
    Cluster(ClusterArgs),
    /// Cycle tables on the dual.
    Cycles {
        #[command(subcommand)]
        command: CyclesCommand,
    },
    /// Run every module's invariant checks on one instance.
    Verify(VerifyArgs),
    /// Solve a suite of instances and tabulate against the optimum.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
pub enum CyclesCommand {
    /// Cheapest cycle through a dual vertex per enclosed weight.
    Table {
        #[arg(long)]
        input: PathBuf,
        /// Dual vertex, i.e. a face of the instance.
        #[arg(long)]
        root: VertexId,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Grid,
    Annulus,
    Triangulation,
    Nested,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 3)]
    pub rows: usize,
    #[arg(long, default_value_t = 3)]
    pub cols: usize,
    #[arg(long, default_value_t = 2)]
    pub rings: usize,
    #[arg(long, default_value_t = 4)]
    pub spokes: usize,
    #[arg(long, default_value_t = 8)]
    pub vertices: usize,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = 1)]
    pub max_weight: u64,
    #[arg(long, default_value_t = 1)]
    pub max_cost: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl GenArgs {
    pub fn spec(&self) -> GeneratorSpec {
        let family = match self.family {
            FamilyArg::Grid => Family::Grid {
                rows: self.rows,
                cols: self.cols,
            },
            FamilyArg::Annulus => Family::Annulus {
                rings: self.rings,
                spokes: self.spokes,
            },
            FamilyArg::Triangulation => Family::RandomTriangulation {
                vertices: self.vertices,
            },
            FamilyArg::Nested => Family::NestedCycles {
                depth: self.depth,
                spokes: self.spokes,
            },
        };
        GeneratorSpec {
            family,
            max_weight: self.max_weight,
            max_cost: self.max_cost,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StageArg {
    Spanner,
    Thin,
    Dp,
    All,
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Stage {
        match s {
            StageArg::Spanner => Stage::Spanner,
            StageArg::Thin => Stage::Thin,
            StageArg::Dp => Stage::Dp,
            StageArg::All => Stage::All,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_ratio)]
    pub b: Cost,
    #[arg(long, value_parser = parse_ratio)]
    pub epsilon: Cost,
    /// Single lambda instead of the sweep.
    #[arg(long, value_parser = parse_ratio)]
    pub lambda: Option<Cost>,
    #[arg(long, default_value_t = 8)]
    pub kmax: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: usize,
    #[arg(long, value_enum, default_value_t = StageArg::All)]
    pub stage: StageArg,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_ratio)]
    pub b: Cost,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_ratio)]
    pub lambda: Cost,
    #[arg(long, value_parser = parse_ratio)]
    pub epsilon: Cost,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Region tree node; must have holes.
    #[arg(long)]
    pub region: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_ratio, default_value = "1/2")]
    pub b: Cost,
    #[arg(long, value_parser = parse_ratio)]
    pub epsilon: Cost,
    #[arg(long, value_parser = parse_ratio)]
    pub lambda: Option<Cost>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance files; a built-in suite of grids and annuli when absent.
    #[arg(long)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_parser = parse_ratio, default_value = "1/2")]
    pub b: Cost,
    #[arg(long, value_parser = parse_ratio, default_value = "1/10")]
    pub epsilon: Cost,
    #[arg(long, default_value_t = 8)]
    pub kmax: usize,
    /// Emit JSON rows instead of a table.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn dual(g: &EmbeddedGraph) -> EmbeddedGraph {
    g.dualize().normalize_outer().0
}

/// The instance vertex kept out of U, if the normalized outer face is one.
fn fixed_vertex(g: &EmbeddedGraph) -> Option<VertexId> {
    dual(g).outer_face().filter(|&f| f < g.num_vertices())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn exact_json(g: &EmbeddedGraph, b: Cost) -> Result<Value> {
    let w = g.to_weighted();
    let bw = b * Cost::from_integer(w.total_weight() as i128);
    let (lo, hi) = (floor_u64(bw), ceil_u64(bw));
    let s = exact_bipartition(&w, lo, hi, fixed_vertex(g))?;
    Ok(json!({ "b": b.to_string(), "window": [lo, hi], "solution": report::solution(&s) }))
}

fn bench_suite() -> Vec<(String, EmbeddedGraph)> {
    let mut out = Vec::new();
    for (r, c) in [(3, 3), (3, 4), (4, 4), (4, 5)] {
        let spec = GeneratorSpec::unit(Family::Grid { rows: r, cols: c });
        out.push((format!("grid-{r}x{c}"), generate(&spec).expect("grid")));
    }
    for seed in 0..2 {
        for spokes in [4, 5] {
            let spec = GeneratorSpec {
                family: Family::Annulus { rings: 2, spokes },
                max_weight: 3,
                max_cost: 3,
                seed,
            };
            out.push((format!("annulus-2x{spokes}-s{seed}"), generate(&spec).expect("annulus")));
        }
    }
    out
}

fn bench(args: &BenchArgs) -> Result<String> {
    let instances = if args.input.is_empty() {
        bench_suite()
    } else {
        args.input
            .iter()
            .map(|p| Ok((p.display().to_string(), read_instance(p)?)))
            .collect::<Result<Vec<_>>>()?
    };
    let cfg = SolveConfig {
        k_max: args.kmax,
        ..SolveConfig::default()
    };
    let mut rows = Vec::new();
    for (name, g) in instances {
        let start = Instant::now();
        let r = solve_report(&g, args.b, args.epsilon, &cfg)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let opt = exact_json(&g, args.b)
            .ok()
            .and_then(|v| v["solution"]["cost"].as_str().map(String::from));
        let best = r.best.map(|i| &r.runs[i]);
        let sol = r.solution.as_ref();
        let ratio = match (sol, opt.as_deref().map(parse_ratio)) {
            (Some(s), Some(Ok(o))) if o > Cost::from_integer(0) => Some(float(s.cost / o)),
            _ => None,
        };
        rows.push(json!({
            "instance": name,
            "opt": opt,
            "cost": sol.map(|s| s.cost.to_string()),
            "ratio": ratio,
            "b_prime": sol.map(|s| s.b_prime().to_string()),
            "spanner_cost": best.map(|b| b.spanner_cost.to_string()),
            "contracted_cost": best.map(|b| b.contracted_cost.to_string()),
            "thinning_cost": best.and_then(|b| b.thinning_cost).map(|c| c.to_string()),
            "k": best.map(|b| b.k),
            "width": best.and_then(|b| b.width),
            "ms": ms,
        }));
    }
    if args.json {
        return Ok(pretty(&Value::Array(rows)));
    }
    let mut out = String::new();
    let cols = [
        "instance",
        "opt",
        "cost",
        "ratio",
        "b_prime",
        "spanner_cost",
        "contracted_cost",
        "thinning_cost",
        "k",
        "width",
        "ms",
    ];
    writeln!(out, "{}", cols.join("\t"))?;
    for r in &rows {
        let cells: Vec<String> = cols
            .iter()
            .map(|&k| match &r[k] {
                Value::Null => "-".into(),
                Value::String(s) => s.clone(),
                Value::Number(n) if k == "ratio" || k == "ms" => format!("{:.2}", n.as_f64().unwrap_or(0.0)),
                v => v.to_string(),
            })
            .collect();
        writeln!(out, "{}", cells.join("\t"))?;
    }
    Ok(out)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(p: &Path, text: &str) -> Result<()> {
    std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))
}

/// Runs a verb and returns what it would print, with its output path.
pub fn execute(cli: &Cli) -> Result<(String, Option<PathBuf>)> {
    Ok(match &cli.command {
        Command::Gen(a) => (write_instance_string(&generate(&a.spec())?), a.out.clone()),
        Command::Solve(a) => {
            let g = read_instance(&a.input)?;
            let cfg = SolveConfig {
                lambda: a.lambda,
                k_max: a.kmax,
                max_states: a.max_states,
                stage: a.stage.into(),
                ..SolveConfig::default()
            };
            (
                pretty(&report::solve(&solve_report(&g, a.b, a.epsilon, &cfg)?)),
                a.report.clone(),
            )
        }
        Command::Exact(a) => (pretty(&exact_json(&read_instance(&a.input)?, a.b)?), a.out.clone()),
        Command::Skeleton(a) => {
            let d = dual(&read_instance(&a.input)?);
            let s = build_skeleton(&d, a.lambda, a.epsilon)?;
            (pretty(&report::skeleton(&d, &s)), a.out.clone())
        }
        Command::Spanner(a) => {
            let d = dual(&read_instance(&a.input)?);
            (
                pretty(&report::spanner(&build_spanner(&d, a.lambda, a.epsilon)?)),
                a.out.clone(),
            )
        }
        Command::Cluster(a) => {
            let p = &a.params;
            let d = dual(&read_instance(&p.input)?);
            let s = build_skeleton(&d, p.lambda, p.epsilon)?;
            if a.region >= s.tree.len() {
                bail!(
                    "region {} does not exist; the skeleton has {} regions",
                    a.region,
                    s.tree.len()
                );
            }
            let region = s.region(&d, a.region)?;
            if region.holes.is_empty() {
                bail!("region {} has no holes", a.region);
            }
            let cover = DoubleCover::new(region)?;
            let w = build_well_connected_cover(&cover, p.epsilon)?;
            (pretty(&report::cluster(a.region, &w)), p.out.clone())
        }
        Command::Cycles {
            command: CyclesCommand::Table { input, root, out },
        } => {
            let d = dual(&read_instance(input)?);
            if *root >= d.num_vertices() {
                bail!("root {root} is not a dual vertex (0..{})", d.num_vertices());
            }
            let costs = ScaledCosts::new(&d.costs());
            let tree = dijkstra(&d, &costs.scaled, *root, None);
            (
                pretty(&report::table(&min_cycle_exact_weight(&d, *root, &tree)?)),
                out.clone(),
            )
        }
        Command::Verify(a) => {
            let r = match read_instance(&a.input) {
                Ok(g) => verify(&g, a.b, a.epsilon, a.lambda)?,
                Err(e) => VerifyReport::ingestion_failure(e.to_string()),
            };
            (pretty(&report::verify(&r)), a.out.clone())
        }
        Command::Bench(a) => (bench(a)?, a.out.clone()),
    })
}

/// Runs one command. A verify report with a failing check is written out
/// and then turned into an error, so the exit status reflects it.
pub fn run(cli: &Cli) -> Result<()> {
    let (text, out) = execute(cli)?;
    emit(&out, &text)?;
    if matches!(cli.command, Command::Verify(_)) && serde_json::from_str::<serde_json::Value>(&text)?["passed"] == false
    {
        anyhow::bail!("verification failed");
    }
    Ok(())
}
