//! JSON and CSV formats.
//!
//! A space is written as `{"labels": [...], "closure": [[...], ...]}` where
//! `closure[i]` lists `c({i})` by index (labels are accepted on input).
//! Wherever a space is expected, `{"cyclic": {"n": N, "m": M}}`,
//! `{"wedge": [{"n":..,"m":..}, {"n":..,"m":..}]}` or a file name (relative
//! to the referring file) may be given instead.
//!
//! Parse errors name the offending field as a JSON path.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::QuotientMap;
use crate::covering::{CoveringCandidate, CoveringVerdict, LiftCount};
use crate::error::{Error, Result};
use crate::generators::{CyclicSpace, Digraph, FiniteMetricSpace, Metric, SimplicialComplex};
use crate::homotopy::{Verdict, WedgeSpace};
use crate::persistence::{Barcode, ComponentMap};
use crate::space::FiniteClosureSpace;

/// Rounds to 12 significant digits, the precision of all emitted floats.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn parse_error(context: &str, path: &str, msg: impl std::fmt::Display) -> Error {
    let field = match (context.is_empty(), path == "." || path.is_empty()) {
        (true, true) => "<root>".to_string(),
        (true, false) => path.to_string(),
        (false, true) => context.to_string(),
        (false, false) => format!("{context}.{path}"),
    };
    Error::Parse(format!("{field}: {msg}"))
}

/// Deserializes `value`, reporting failures with the field path under `context`.
pub fn from_value<T: DeserializeOwned>(value: &Value, context: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        parse_error(context, &path, e.into_inner())
    })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclicSpec {
    pub n: usize,
    pub m: usize,
}

impl CyclicSpec {
    fn build(self) -> Result<CyclicSpace> {
        CyclicSpace::new(self.n, self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
enum PointRef {
    Index(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceJson {
    labels: Vec<String>,
    closure: Vec<Vec<PointRef>>,
}

/// A space together with the structure it was built from, when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedSpace {
    Plain(FiniteClosureSpace),
    Cyclic(CyclicSpace, FiniteClosureSpace),
    Wedge(WedgeSpace),
}

impl LoadedSpace {
    pub fn space(&self) -> &FiniteClosureSpace {
        match self {
            LoadedSpace::Plain(s) | LoadedSpace::Cyclic(_, s) => s,
            LoadedSpace::Wedge(w) => w.space(),
        }
    }

    pub fn into_space(self) -> FiniteClosureSpace {
        match self {
            LoadedSpace::Plain(s) | LoadedSpace::Cyclic(_, s) => s,
            LoadedSpace::Wedge(w) => w.space().clone(),
        }
    }

    /// Short description of where the space came from.
    pub fn origin(&self) -> Value {
        match self {
            LoadedSpace::Plain(_) => Value::Null,
            LoadedSpace::Cyclic(c, _) => json!({ "cyclic": { "n": c.n, "m": c.m } }),
            LoadedSpace::Wedge(w) => {
                let (a, b) = w.circles();
                json!({ "wedge": [{ "n": a.n, "m": a.m }, { "n": b.n, "m": b.m }] })
            }
        }
    }
}

/// Reads a space from a JSON value. `dir` resolves file references.
pub fn space_from_value(value: &Value, dir: &Path, context: &str) -> Result<LoadedSpace> {
    match value {
        Value::String(file) => {
            let path = dir.join(file);
            let inner = read_json(&path)?;
            space_from_value(&inner, path.parent().unwrap_or(dir), "")
        }
        Value::Object(map) if map.contains_key("cyclic") => {
            let spec: CyclicSpec = from_value(&map["cyclic"], &join(context, "cyclic"))?;
            let c = spec.build().map_err(|e| Error::Parse(format!("{}: {e}", join(context, "cyclic"))))?;
            Ok(LoadedSpace::Cyclic(c, c.space()))
        }
        Value::Object(map) if map.contains_key("wedge") => {
            let [a, b]: [CyclicSpec; 2] = from_value(&map["wedge"], &join(context, "wedge"))?;
            let w = WedgeSpace::new(a.build()?, b.build()?)?;
            Ok(LoadedSpace::Wedge(w))
        }
        _ => {
            let raw: SpaceJson = from_value(value, context)?;
            let n = raw.labels.len();
            if raw.closure.len() != n {
                return Err(parse_error(
                    context,
                    "closure",
                    format!("{} rows for {n} labels", raw.closure.len()),
                ));
            }
            let mut lists = Vec::with_capacity(n);
            for (i, row) in raw.closure.iter().enumerate() {
                let mut list = Vec::with_capacity(row.len());
                for (j, p) in row.iter().enumerate() {
                    let idx = match p {
                        PointRef::Index(k) if *k < n => *k,
                        PointRef::Index(k) => {
                            return Err(parse_error(context, &format!("closure[{i}][{j}]"), format!("index {k} out of range")))
                        }
                        PointRef::Label(l) => raw.labels.iter().position(|x| x == l).ok_or_else(|| {
                            parse_error(context, &format!("closure[{i}][{j}]"), format!("unknown label {l:?}"))
                        })?,
                    };
                    list.push(idx);
                }
                lists.push(list);
            }
            let space = FiniteClosureSpace::from_closures(raw.labels, &lists)
                .map_err(|e| Error::Parse(format!("{}: {e}", if context.is_empty() { "closure" } else { context })))?;
            Ok(LoadedSpace::Plain(space))
        }
    }
}

fn join(context: &str, field: &str) -> String {
    if context.is_empty() {
        field.to_string()
    } else {
        format!("{context}.{field}")
    }
}

pub fn load_space(path: &Path) -> Result<LoadedSpace> {
    let v = read_json(path)?;
    space_from_value(&v, parent_dir(path), "")
}

pub fn parent_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

pub fn space_to_json(space: &FiniteClosureSpace) -> Value {
    json!({ "labels": space.labels(), "closure": space.closure_lists() })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientJson {
    space: Value,
    classes: Vec<String>,
    assign: Vec<usize>,
}

pub fn quotient_from_value(value: &Value, dir: &Path) -> Result<QuotientMap> {
    let raw: QuotientJson = from_value(value, "")?;
    let source = space_from_value(&raw.space, dir, "space")?.into_space();
    QuotientMap::new(source, raw.classes, raw.assign).map_err(|e| Error::Parse(format!("assign: {e}")))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricName {
    #[default]
    Euclidean,
    Circle,
}

impl From<MetricName> for Metric {
    fn from(m: MetricName) -> Metric {
        match m {
            MetricName::Euclidean => Metric::Euclidean,
            MetricName::Circle => Metric::Circle,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricJson {
    labels: Option<Vec<String>>,
    dist: Option<Vec<Vec<f64>>>,
    points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    metric: MetricName,
}

/// `{"labels"?, "dist": [[...]]}` or `{"labels"?, "points": [[...]], "metric"?}`.
pub fn metric_from_value(value: &Value, context: &str) -> Result<FiniteMetricSpace> {
    let raw: MetricJson = from_value(value, context)?;
    let wrap = |field: &str, e: Error| Error::Parse(format!("{}: {e}", join(context, field)));
    match (raw.dist, raw.points) {
        (Some(dist), None) => {
            let labels = raw.labels.unwrap_or_else(|| index_labels(dist.len()));
            FiniteMetricSpace::from_matrix(labels, &dist).map_err(|e| wrap("dist", e))
        }
        (None, Some(points)) => {
            let labels = raw.labels.unwrap_or_else(|| index_labels(points.len()));
            FiniteMetricSpace::from_points(labels, &points, raw.metric.into()).map_err(|e| wrap("points", e))
        }
        _ => Err(parse_error(context, "", "expected exactly one of \"dist\" or \"points\"")),
    }
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Point cloud from CSV: one point per row, optionally led by a label
/// column; a first row with no numeric field is taken as a header. Lines
/// starting with `#` are skipped.
pub fn read_point_cloud(text: &str, metric: Metric) -> Result<FiniteMetricSpace> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut labels = Vec::new();
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut labelled: Option<bool> = None;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("row {}: {e}", row + 1)))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if row == 0 && record.iter().all(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        let has_label = *labelled.get_or_insert_with(|| record.get(0).is_some_and(|f| f.parse::<f64>().is_err()));
        let fields: Vec<&str> = record.iter().collect();
        let (label, coords) = if has_label {
            (fields[0].to_string(), &fields[1..])
        } else {
            (points.len().to_string(), &fields[..])
        };
        let mut p = Vec::with_capacity(coords.len());
        for (col, f) in coords.iter().enumerate() {
            let x: f64 = f.parse().map_err(|_| {
                Error::Parse(format!("row {}, column {}: {f:?} is not a number", row + 1, col + 1 + has_label as usize))
            })?;
            p.push(x);
        }
        labels.push(label);
        points.push(p);
    }
    FiniteMetricSpace::from_points(labels, &points, metric).map_err(|e| Error::Parse(format!("points: {e}")))
}

/// A `.json` metric file or a CSV point cloud.
pub fn load_cloud(path: &Path, metric: Metric) -> Result<FiniteMetricSpace> {
    if path.extension().is_some_and(|e| e == "json") {
        metric_from_value(&read_json(path)?, "")
    } else {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        read_point_cloud(&text, metric)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    directed: bool,
}

/// `{"vertices": [...], "edges": [[u, v], ...], "directed"?: bool}`.
pub fn graph_from_value(value: &Value) -> Result<Digraph> {
    let raw: GraphJson = from_value(value, "")?;
    let g = if raw.directed {
        Digraph::new(raw.vertices, raw.edges)
    } else {
        Digraph::undirected(raw.vertices, &raw.edges)
    };
    g.map_err(|e| Error::Parse(format!("edges: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
}

/// `{"vertices": [...], "simplices": [[...], ...]}`; faces are implied.
pub fn complex_from_value(value: &Value) -> Result<SimplicialComplex> {
    let raw: ComplexJson = from_value(value, "")?;
    SimplicialComplex::new(raw.vertices, &raw.simplices).map_err(|e| Error::Parse(format!("simplices: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PathJson {
    space: Value,
    points: Vec<usize>,
}

/// `{"space": <space>, "points": [...]}`; the points are not validated here.
pub fn path_from_value(value: &Value, dir: &Path) -> Result<(LoadedSpace, Vec<usize>)> {
    let raw: PathJson = from_value(value, "")?;
    let space = space_from_value(&raw.space, dir, "space")?;
    Ok((space, raw.points))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoveringJson {
    total: Option<Value>,
    base: Option<Value>,
    proj: Option<Vec<usize>>,
    cyclic: Option<CyclicCover>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclicCover {
    n: usize,
    m: usize,
    k: usize,
}

/// `{"total": <space>, "base": <space>, "proj": [...]}`, or
/// `{"cyclic": {"n", "m", "k"}}` for the `k`-fold cyclic cover.
pub fn covering_from_value(value: &Value, dir: &Path) -> Result<CoveringCandidate> {
    let raw: CoveringJson = from_value(value, "")?;
    match raw {
        CoveringJson { cyclic: Some(c), total: None, base: None, proj: None } => {
            CoveringCandidate::cyclic(c.n, c.m, c.k).map_err(|e| Error::Parse(format!("cyclic: {e}")))
        }
        CoveringJson { cyclic: None, total: Some(t), base: Some(b), proj: Some(p) } => {
            let total = space_from_value(&t, dir, "total")?.into_space();
            let base = space_from_value(&b, dir, "base")?.into_space();
            CoveringCandidate::new(total, base, p).map_err(|e| Error::Parse(format!("proj: {e}")))
        }
        _ => Err(Error::Parse("expected \"total\", \"base\" and \"proj\", or \"cyclic\"".into())),
    }
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let witness = match v {
        Verdict::Yes { trace } => json!({ "moves": trace }),
        Verdict::No { invariant, left, right } => json!({ "invariant": invariant, "left": left, "right": right }),
        Verdict::Unknown { explored } => json!({ "explored": explored }),
    };
    json!({ "verdict": v.label(), "witness": witness })
}

pub fn covering_to_json(cc: &CoveringCandidate) -> Value {
    match cc.verdict() {
        CoveringVerdict::Covering(ts) => json!({ "covering": true, "trivializations": ts }),
        CoveringVerdict::NotCovering(f) => json!({ "covering": false, "failure": f }),
    }
}

pub fn lift_count_to_json(c: &LiftCount) -> Value {
    match c {
        LiftCount::Unique(l) => json!({ "lifts": "unique", "witnesses": [l] }),
        LiftCount::Multiple(a, b) => json!({ "lifts": "multiple", "witnesses": [a, b] }),
        LiftCount::None => json!({ "lifts": "none", "witnesses": [] }),
    }
}

pub fn barcode_to_json(b: &Barcode) -> Value {
    let bars: Vec<Value> = b.bars.iter().map(|&(s, d)| json!([round12(s), d.map(round12)])).collect();
    json!({ "bars": bars })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BarcodeJson {
    bars: Vec<(f64, Option<f64>)>,
}

pub fn barcode_from_value(value: &Value) -> Result<Barcode> {
    let raw: BarcodeJson = from_value(value, "")?;
    Ok(Barcode { bars: raw.bars })
}

pub fn component_map_to_json(m: &ComponentMap, labels: &[String]) -> Value {
    let named = |classes: &[Vec<usize>]| -> Vec<Vec<String>> {
        classes.iter().map(|c| c.iter().map(|&x| labels[x].clone()).collect()).collect()
    };
    json!({ "source": named(&m.source), "target": named(&m.target), "map": m.map, "rank": m.rank() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip() {
        let s = crate::space::fixtures::q3();
        let v = space_to_json(&s);
        let back = space_from_value(&v, Path::new("."), "").unwrap();
        assert_eq!(back.space(), &s);
    }

    #[test]
    fn labels_accepted_in_closure() {
        let v = json!({ "labels": ["a", "b"], "closure": [["a", "b"], [1]] });
        let s = space_from_value(&v, Path::new("."), "").unwrap().into_space();
        assert_eq!(s.closure_lists(), vec![vec![0, 1], vec![1]]);
    }

    #[test]
    fn errors_name_fields() {
        let v = json!({ "labels": ["a", "b"], "closure": [[0], [7]] });
        let e = space_from_value(&v, Path::new("."), "space").unwrap_err().to_string();
        assert!(e.contains("space.closure[1][0]"), "{e}");
        let v = json!({ "labels": ["a"], "closure": [[0]], "extra": 1 });
        assert!(space_from_value(&v, Path::new("."), "").is_err());
        let v = json!({ "cyclic": { "n": "seven", "m": 2 } });
        let e = space_from_value(&v, Path::new("."), "space").unwrap_err().to_string();
        assert!(e.contains("space.cyclic.n"), "{e}");
        let v = json!({ "labels": ["a"], "closure": [[]] });
        let e = space_from_value(&v, Path::new("."), "").unwrap_err().to_string();
        assert!(e.contains("closure"), "{e}");
    }

    #[test]
    fn cyclic_and_wedge_refs() {
        let c = space_from_value(&json!({ "cyclic": { "n": 7, "m": 2 } }), Path::new("."), "").unwrap();
        assert!(matches!(c, LoadedSpace::Cyclic(..)));
        let w = space_from_value(&json!({ "wedge": [{ "n": 7, "m": 2 }, { "n": 7, "m": 2 }] }), Path::new("."), "").unwrap();
        assert_eq!(w.space().len(), 13);
    }

    #[test]
    fn csv_clouds() {
        let ms = read_point_cloud("x,y\n0,0\n3,4\n", Metric::Euclidean).unwrap();
        assert_eq!(ms.len(), 2);
        assert!((ms.distance(0, 1) - 5.0).abs() < 1e-12);
        let ms = read_point_cloud("# comment\na, 0\nb, 1\nc, 2\n", Metric::Euclidean).unwrap();
        assert_eq!(ms.labels(), &["a", "b", "c"]);
        let e = read_point_cloud("0,1\n2,oops\n", Metric::Euclidean).unwrap_err().to_string();
        assert!(e.contains("row 2, column 2"), "{e}");
        assert!(read_point_cloud("0,1\n2\n", Metric::Euclidean).is_err());
    }

    #[test]
    fn metric_json_forms() {
        let a = metric_from_value(&json!({ "dist": [[0, 1], [1, 0]] }), "").unwrap();
        let b = metric_from_value(&json!({ "points": [[0.1], [0.9]], "metric": "circle" }), "").unwrap();
        assert!((b.distance(0, 1) - 0.2).abs() < 1e-12);
        assert_eq!(a.labels(), &["0", "1"]);
        assert!(metric_from_value(&json!({}), "").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(8.0), 8.0);
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn barcode_json_round_trip() {
        let b = Barcode { bars: vec![(0.0, None), (0.0, Some(1.5))] };
        let v = barcode_to_json(&b);
        assert_eq!(v, json!({ "bars": [[0.0, null], [0.0, 1.5]] }));
        assert_eq!(barcode_from_value(&v).unwrap(), b);
    }
}
