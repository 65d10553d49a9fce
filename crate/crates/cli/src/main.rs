//! `cech`: command-line front end for the closure-space library.
//!
//! Exit codes: 0 success, 1 the computation ran but the answer is negative
//! (or undecided), 2 bad input. Results go to stdout as JSON; diagnostics go
//! to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cech::constructions::{disjoint_union, product, quotient, subspace};
use cech::covering::LiftCount;
use cech::generators::{DEFAULT_TOL, FiniteMetricSpace, Metric, MetricMap};
use cech::homotopy::search::LoopInvariant;
use cech::homotopy::{null_contraction, winding, DiscretePath, HomotopySearch, Verdict};
use cech::io::{self, LoadedSpace};
use cech::persistence;
use cech::{Error, FiniteClosureSpace, SpaceMap};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cech", version, about = "Computations on finite Čech closure spaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Absolute slack for distance comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build, inspect and combine spaces.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Continuity of maps.
    #[command(subcommand)]
    Map(MapCmd),
    /// Discrete paths.
    #[command(subcommand)]
    Path(PathCmd),
    /// Loop invariants and homotopy search.
    #[command(subcommand)]
    Homotopy(HomotopyCmd),
    /// Covering maps and lifting.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Persistent components of a point cloud.
    #[command(subcommand)]
    Persist(PersistCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Pointcloud,
    Graph,
    Complex,
    Cyclic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Euclidean,
    Circle,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Euclidean => Metric::Euclidean,
            MetricArg::Circle => Metric::Circle,
        }
    }
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// Build a space from a point cloud, graph, simplicial complex or cycle.
    New {
        #[arg(long, value_enum)]
        from: Source,
        /// Input file (not used with `--from cyclic`).
        input: Option<PathBuf>,
        /// Radius for `pointcloud`.
        #[arg(long)]
        r: Option<f64>,
        /// Skeleton dimension for `complex`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
        metric: MetricArg,
    },
    /// Validate and summarise a space.
    Info { input: PathBuf },
    /// Topological modification (transitive closure of the relation).
    Tau { input: PathBuf },
    #[command(subcommand)]
    Op(OpCmd),
}

#[derive(Subcommand)]
enum OpCmd {
    /// Subspace on the given points (labels or indices, comma separated).
    Subspace {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
    },
    Product { left: PathBuf, right: PathBuf },
    /// Quotient from `{"space", "classes", "assign"}`.
    Quotient { input: PathBuf },
    Disjoint {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapCmd {
    /// Check `{"domain", "codomain", "values"}` for continuity. With `--qr`,
    /// domain and codomain are metric spaces.
    Check {
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["Q", "R"])]
        qr: Option<Vec<f64>>,
    },
}

#[derive(Subcommand)]
enum PathCmd {
    Check { input: PathBuf },
    Star { first: PathBuf, second: PathBuf },
    Reverse { input: PathBuf },
}

#[derive(Args)]
struct SearchArgs {
    /// Longest sequence the search may pass through.
    #[arg(long)]
    cap: Option<usize>,
    /// Maximum number of sequences visited.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum HomotopyCmd {
    /// Winding number of a loop in a cyclic space.
    Winding { input: PathBuf },
    /// Reduced word of a loop in a wedge of two cycles.
    Word { input: PathBuf },
    /// Whether two loops are homotopic.
    Equal {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Whether a loop is null-homotopic, or, given a space, whether every loop is.
    Null {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    Check { input: PathBuf },
    /// Lift a base path (comma separated base indices) from `--start`.
    Lift {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
        #[arg(long)]
        start: usize,
    },
    /// Count the lifts of a base path from `--start`.
    Lifts {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<usize>,
        #[arg(long)]
        start: usize,
    },
}

#[derive(Subcommand)]
enum PersistCmd {
    Barcode {
        cloud: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
        metric: MetricArg,
    },
    Dendrogram {
        cloud: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
        metric: MetricArg,
        /// Emit a Newick string instead of nested JSON.
        #[arg(long)]
        newick: bool,
    },
    Components {
        cloud: PathBuf,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
        metric: MetricArg,
    },
}

/// A JSON result and whether it counts as a positive answer.
struct Outcome {
    payload: Value,
    ok: bool,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { payload, ok: true }
    }

    fn verdict(payload: Value, ok: bool) -> Self {
        Outcome { payload, ok }
    }
}

type CmdResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.payload).expect("serializable") + "\n",
                Format::Text => text(&out.payload),
            };
            // A closed pipe downstream is not our failure.
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    if !(cli.tol >= 0.0) {
        return Err("--tol: must be a non-negative number".into());
    }
    match &cli.command {
        Command::Space(c) => space_cmd(c, cli.tol),
        Command::Map(c) => map_cmd(c, cli.tol),
        Command::Path(c) => path_cmd(c),
        Command::Homotopy(c) => homotopy_cmd(c),
        Command::Cover(c) => cover_cmd(c),
        Command::Persist(c) => persist_cmd(c, cli.tol),
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn field(name: &str) -> impl Fn(Error) -> String + '_ {
    move |e| format!("{name}: {e}")
}

fn load(path: &Path) -> Result<LoadedSpace, String> {
    io::load_space(path).map_err(err)
}

fn labels_of(space: &FiniteClosureSpace, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| space.label(x).to_string()).collect()
}

fn space_cmd(cmd: &SpaceCmd, tol: f64) -> CmdResult {
    match cmd {
        SpaceCmd::New { from, input, r, k, n, m, metric } => {
            let need_input = || input.as_deref().ok_or_else(|| "input: a file is required".to_string());
            let space = match from {
                Source::Cyclic => {
                    let n = n.ok_or("--n: required for --from cyclic")?;
                    let m = m.ok_or("--m: required for --from cyclic")?;
                    cech::CyclicSpace::new(n, m).map_err(field("--n"))?.space()
                }
                Source::Pointcloud => {
                    let r = r.ok_or("--r: required for --from pointcloud")?;
                    let ms = io::load_cloud(need_input()?, (*metric).into()).map_err(err)?;
                    ms.metric_closure_with_tol(r, tol).map_err(field("--r"))?
                }
                Source::Graph => {
                    let v = io::read_json(need_input()?).map_err(err)?;
                    io::graph_from_value(&v).map_err(err)?.closure_space().map_err(err)?
                }
                Source::Complex => {
                    let k = k.ok_or("--k: required for --from complex")?;
                    let v = io::read_json(need_input()?).map_err(err)?;
                    io::complex_from_value(&v).map_err(err)?.skeleton_closure(k).map_err(field("--k"))?
                }
            };
            Ok(Outcome::ok(io::space_to_json(&space)))
        }
        SpaceCmd::Info { input } => {
            let loaded = load(input)?;
            let s = loaded.space();
            let report = s.validate();
            let witness = s.idempotence_failure().map(|(x, c1, c2)| {
                json!({ "point": s.label(x), "closure": labels_of(s, c1.iter()), "closure2": labels_of(s, c2.iter()) })
            });
            let components: Vec<Vec<String>> = s.components().into_iter().map(|c| labels_of(s, c)).collect();
            Ok(Outcome::ok(json!({
                "points": s.len(),
                "valid": report.passed,
                "non_reflexive": report.non_reflexive,
                "topological": s.is_topological(),
                "idempotence_witness": witness,
                "connected": s.is_connected(),
                "components": components,
                "indiscrete": s.is_indiscrete(),
                "discrete": s.is_discrete(),
                "symmetric": s.is_symmetric(),
            })))
        }
        SpaceCmd::Tau { input } => Ok(Outcome::ok(io::space_to_json(&load(input)?.space().tau_modification()))),
        SpaceCmd::Op(op) => op_cmd(op),
    }
}

fn op_cmd(op: &OpCmd) -> CmdResult {
    let space = match op {
        OpCmd::Subspace { input, points } => {
            let s = load(input)?.into_space();
            let mut idx = Vec::with_capacity(points.len());
            for p in points {
                let i = s
                    .index_of(p)
                    .or_else(|| p.parse::<usize>().ok().filter(|&i| i < s.len()))
                    .ok_or_else(|| format!("--points: unknown point {p:?}"))?;
                idx.push(i);
            }
            let set = s.set(idx).map_err(field("--points"))?;
            subspace(&s, &set)
        }
        OpCmd::Product { left, right } => product(load(left)?.space(), load(right)?.space()),
        OpCmd::Quotient { input } => {
            let v = io::read_json(input).map_err(err)?;
            quotient(&io::quotient_from_value(&v, io::parent_dir(input)).map_err(err)?)
        }
        OpCmd::Disjoint { inputs } => {
            let spaces = inputs.iter().map(|p| load(p).map(LoadedSpace::into_space)).collect::<Result<Vec<_>, _>>()?;
            disjoint_union(&spaces.iter().collect::<Vec<_>>())
        }
    };
    Ok(Outcome::ok(io::space_to_json(&space)))
}

fn map_cmd(cmd: &MapCmd, tol: f64) -> CmdResult {
    let MapCmd::Check { input, qr } = cmd;
    let v = io::read_json(input).map_err(err)?;
    let dir = io::parent_dir(input);
    let get = |k: &str| v.get(k).ok_or_else(|| format!("{k}: missing"));
    let values: Vec<usize> = io::from_value(get("values")?, "values").map_err(err)?;
    match qr {
        Some(qr) => {
            let (q, r) = (qr[0], qr[1]);
            let dom = metric_ref(get("domain")?, dir, "domain")?;
            let cod = metric_ref(get("codomain")?, dir, "codomain")?;
            let f = MetricMap::new(&dom, &cod, values).map_err(field("values"))?;
            let violation = f.qr_violation_with_tol(q, r, tol).map_err(field("--qr"))?;
            let pair = violation.map(|(i, j)| json!([dom.labels()[i], dom.labels()[j]]));
            Ok(Outcome::verdict(json!({ "qr_continuous": violation.is_none(), "q": q, "r": r, "violation": pair }), violation.is_none()))
        }
        None => {
            let dom = io::space_from_value(get("domain")?, dir, "domain").map_err(err)?;
            let cod = io::space_from_value(get("codomain")?, dir, "codomain").map_err(err)?;
            let f = SpaceMap::new(dom.space(), cod.space(), values).map_err(field("values"))?;
            let failure = f.continuity_failure();
            Ok(Outcome::verdict(
                json!({
                    "continuous": failure.is_none(),
                    "failure": failure.map(|x| dom.space().label(x).to_string()),
                    "homeomorphism": f.is_homeomorphism(),
                }),
                failure.is_none(),
            ))
        }
    }
}

/// A metric space inline, or a file name (JSON or CSV).
fn metric_ref(v: &Value, dir: &Path, name: &str) -> Result<FiniteMetricSpace, String> {
    match v {
        Value::String(file) => io::load_cloud(&dir.join(file), Metric::Euclidean).map_err(field(name)),
        _ => io::metric_from_value(v, name).map_err(err),
    }
}

fn load_path(input: &Path) -> Result<(LoadedSpace, Vec<usize>), String> {
    let v = io::read_json(input).map_err(err)?;
    io::path_from_value(&v, io::parent_dir(input)).map_err(err)
}

fn path_json(loaded: &LoadedSpace, points: &[usize]) -> Value {
    let space = match loaded.origin() {
        Value::Null => io::space_to_json(loaded.space()),
        origin => origin,
    };
    json!({ "space": space, "points": points })
}

fn path_cmd(cmd: &PathCmd) -> CmdResult {
    match cmd {
        PathCmd::Check { input } => {
            let (loaded, points) = load_path(input)?;
            if points.is_empty() {
                return Err("points: a path needs at least one point".into());
            }
            let bad = cech::homotopy::path::first_invalid_step(loaded.space(), &points).map_err(field("points"))?;
            Ok(Outcome::verdict(
                json!({
                    "valid": bad.is_none(),
                    "first_invalid_step": bad,
                    "steps": points.len() - 1,
                    "closed": points.first() == points.last(),
                }),
                bad.is_none(),
            ))
        }
        PathCmd::Star { first, second } => {
            let (la, pa) = load_path(first)?;
            let (lb, pb) = load_path(second)?;
            let a = DiscretePath::new(la.space(), pa).map_err(field("first.points"))?;
            let b = DiscretePath::new(lb.space(), pb).map_err(field("second.points"))?;
            let ab = a.star(&b).map_err(err)?;
            Ok(Outcome::ok(path_json(&la, ab.points())))
        }
        PathCmd::Reverse { input } => {
            let (l, p) = load_path(input)?;
            let a = DiscretePath::new(l.space(), p).map_err(field("points"))?;
            Ok(Outcome::ok(path_json(&l, a.reverse().points())))
        }
    }
}

fn searcher<'s>(loaded: &'s LoadedSpace, args: &SearchArgs) -> HomotopySearch<'s> {
    let mut s = match loaded {
        LoadedSpace::Wedge(w) => HomotopySearch::for_wedge(w),
        _ => HomotopySearch::new(loaded.space()),
    };
    if let Some(c) = args.cap {
        s = s.cap(c);
    }
    if let Some(b) = args.budget {
        s = s.budget(b);
    }
    s
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    Outcome::verdict(io::verdict_to_json(v), v.is_yes())
}

fn homotopy_cmd(cmd: &HomotopyCmd) -> CmdResult {
    match cmd {
        HomotopyCmd::Winding { input } => {
            let (loaded, points) = load_path(input)?;
            let cycle = match &loaded {
                LoadedSpace::Cyclic(c, _) => *c,
                other => cech::CyclicSpace::recognize(other.space()).ok_or("space: not a cyclic space")?,
            };
            let w = winding(&cycle, &points).map_err(field("points"))?;
            Ok(Outcome::ok(json!({ "winding": w })))
        }
        HomotopyCmd::Word { input } => {
            let (loaded, points) = load_path(input)?;
            let LoadedSpace::Wedge(w) = &loaded else {
                return Err("space: expected {\"wedge\": [...]}".into());
            };
            let word = w.word(&points).map_err(field("points"))?;
            Ok(Outcome::ok(json!({ "word": word.to_string(), "powers": word.powers() })))
        }
        HomotopyCmd::Equal { first, second, search } => {
            let (la, pa) = load_path(first)?;
            let (lb, pb) = load_path(second)?;
            if la.space() != lb.space() {
                return Err("second.space: differs from first.space".into());
            }
            let a = cech::DiscreteLoop::new(la.space(), pa).map_err(field("first.points"))?;
            let b = cech::DiscreteLoop::new(la.space(), pb).map_err(field("second.points"))?;
            let v = searcher(&la, search).homotopic(&a, &b).map_err(err)?;
            Ok(verdict_outcome(&v))
        }
        HomotopyCmd::Null { input, search } => {
            let v = io::read_json(input).map_err(err)?;
            let dir = io::parent_dir(input);
            if v.get("points").is_some() {
                let (loaded, points) = io::path_from_value(&v, dir).map_err(err)?;
                let l = cech::DiscreteLoop::new(loaded.space(), points).map_err(field("points"))?;
                let c = cech::DiscreteLoop::constant(loaded.space(), l.basepoint()).map_err(err)?;
                let verdict = searcher(&loaded, search).homotopic(&l, &c).map_err(err)?;
                return Ok(verdict_outcome(&verdict));
            }
            let loaded = io::space_from_value(&v, dir, "").map_err(err)?;
            let s = searcher(&loaded, search);
            let report = null_contraction(&s).map_err(err)?;
            let failure = report.failure.as_ref().map(|(l, v)| json!({ "loop": l, "result": io::verdict_to_json(v) }));
            let invariant = s.invariant().map(LoopInvariant::name);
            Ok(Outcome::verdict(
                json!({
                    "contractible": report.contractible,
                    "reason": report.reason,
                    "generators_checked": report.checked,
                    "invariant": invariant,
                    "failure": failure,
                }),
                report.contractible,
            ))
        }
    }
}

fn load_cover(input: &Path) -> Result<(cech::CoveringCandidate, Option<Value>), String> {
    let v = io::read_json(input).map_err(err)?;
    let cc = io::covering_from_value(&v, io::parent_dir(input)).map_err(err)?;
    let note = v.get("cyclic").map(|c| {
        json!(format!(
            "finite cyclic surrogate: Z_{} with m = {} standing in for the integers",
            cc.total().len(),
            c.get("m").cloned().unwrap_or(Value::Null)
        ))
    });
    Ok((cc, note))
}

fn cover_cmd(cmd: &CoverCmd) -> CmdResult {
    match cmd {
        CoverCmd::Check { input } => {
            let (cc, note) = load_cover(input)?;
            let mut payload = io::covering_to_json(&cc);
            if let Some(n) = note {
                payload["model"] = n;
            }
            Ok(Outcome::verdict(payload, cc.is_covering()))
        }
        CoverCmd::Lift { input, path, start } => {
            let (cc, _) = load_cover(input)?;
            let base = DiscretePath::new(cc.base(), path.clone()).map_err(field("--path"))?;
            if *start >= cc.total().len() || cc.projection()[*start] != base.start() {
                return Err(format!("--start: {start} does not lie over base point {}", base.start()));
            }
            match cc.lift_path(&base, *start) {
                Ok(l) => Ok(Outcome::ok(json!({ "lift": l.points() }))),
                Err(e @ (Error::NonUniqueLift(_) | Error::NoLift(_) | Error::NotACovering(_))) => {
                    Ok(Outcome::verdict(json!({ "lift": null, "error": e.to_string() }), false))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        CoverCmd::Lifts { input, path, start } => {
            let (cc, _) = load_cover(input)?;
            let count = cc.lift_uniqueness_check(path, *start).map_err(field("--path"))?;
            Ok(Outcome::verdict(io::lift_count_to_json(&count), matches!(count, LiftCount::Unique(_))))
        }
    }
}

fn persist_cmd(cmd: &PersistCmd, tol: f64) -> CmdResult {
    match cmd {
        PersistCmd::Barcode { cloud, metric } => {
            let ms = io::load_cloud(cloud, (*metric).into()).map_err(err)?;
            Ok(Outcome::ok(io::barcode_to_json(&persistence::pi0_barcode_with_tol(&ms, tol))))
        }
        PersistCmd::Dendrogram { cloud, metric, newick } => {
            let ms = io::load_cloud(cloud, (*metric).into()).map_err(err)?;
            let tree = persistence::dendrogram_with_tol(&ms, tol);
            let heights: Vec<f64> = tree.merge_heights().into_iter().map(io::round12).collect();
            let body = if *newick { json!(tree.to_newick()) } else { round_floats(tree.to_json()) };
            Ok(Outcome::ok(json!({ "merge_heights": heights, "tree": body })))
        }
        PersistCmd::Components { cloud, q, r, metric } => {
            let ms = io::load_cloud(cloud, (*metric).into()).map_err(err)?;
            let m = persistence::persistent_components_with_tol(&ms, *q, *r, tol).map_err(field("--q"))?;
            Ok(Outcome::ok(io::component_map_to_json(&m, ms.labels())))
        }
    }
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(io::round12(n.as_f64().expect("f64"))),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

/// `key: value` lines for the top-level fields.
fn text(v: &Value) -> String {
    match v {
        Value::Object(o) => o
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}
