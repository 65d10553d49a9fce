//! Persistent components of the `c_r` filtration of a finite metric space.
//!
//! Every point is present at every scale, so all bars are born at 0. Two
//! points share a component of `c_r` exactly when a chain of hops of length
//! `<= r` joins them, which is single-linkage clustering: sort the pairwise
//! distances and union. Distances within `tol` of the first distance of a
//! run are merged as one event at that first distance.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{FiniteMetricSpace, DEFAULT_TOL};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root, so roots are class minima.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// Pairwise distances grouped into merge events: `(radius, pairs)`.
fn events(ms: &FiniteMetricSpace, tol: f64) -> Vec<(f64, Vec<(usize, usize)>)> {
    let n = ms.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for (j, &d) in ms.row(i).iter().enumerate().skip(i + 1) {
            pairs.push((d, i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut out: Vec<(f64, Vec<(usize, usize)>)> = Vec::new();
    for (d, i, j) in pairs {
        match out.last_mut() {
            Some((r, group)) if d <= *r + tol => group.push((i, j)),
            _ => out.push((d, vec![(i, j)])),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Barcode {
    /// `(birth, death)`, `None` meaning the class never dies. Sorted by
    /// death, longest first.
    pub bars: Vec<(f64, Option<f64>)>,
}

impl Barcode {
    /// Finite deaths in increasing order.
    pub fn deaths(&self) -> Vec<f64> {
        let mut d: Vec<f64> = self.bars.iter().filter_map(|b| b.1).collect();
        d.sort_by(f64::total_cmp);
        d
    }

    pub fn infinite(&self) -> usize {
        self.bars.iter().filter(|b| b.1.is_none()).count()
    }

    /// Number of classes alive at `r`.
    pub fn betti_at(&self, r: f64) -> usize {
        self.bars.iter().filter(|b| b.1.is_none_or(|d| d > r)).count()
    }
}

pub fn pi0_barcode(ms: &FiniteMetricSpace) -> Barcode {
    pi0_barcode_with_tol(ms, DEFAULT_TOL)
}

pub fn pi0_barcode_with_tol(ms: &FiniteMetricSpace, tol: f64) -> Barcode {
    let n = ms.len();
    let mut uf = UnionFind::new(n);
    let mut deaths = Vec::with_capacity(n);
    for (r, group) in events(ms, tol) {
        for (i, j) in group {
            if uf.union(i, j) {
                deaths.push(r);
            }
        }
        if deaths.len() + 1 == n {
            break;
        }
    }
    let mut bars: Vec<(f64, Option<f64>)> = Vec::with_capacity(n);
    if n > 0 {
        bars.push((0.0, None));
    }
    bars.extend(deaths.into_iter().rev().map(|d| (0.0, Some(d))));
    Barcode { bars }
}

/// Components of `c_r`, each sorted, ordered by smallest point.
pub fn components_at(ms: &FiniteMetricSpace, r: f64) -> Vec<Vec<usize>> {
    components_at_with_tol(ms, r, DEFAULT_TOL)
}

pub fn components_at_with_tol(ms: &FiniteMetricSpace, r: f64, tol: f64) -> Vec<Vec<usize>> {
    let n = ms.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for (j, &d) in ms.row(i).iter().enumerate().skip(i + 1) {
            if d <= r + tol {
                uf.union(i, j);
            }
        }
    }
    uf.classes()
}

/// The map on components induced by the identity `(X, c_q) → (X, c_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentMap {
    pub source: Vec<Vec<usize>>,
    pub target: Vec<Vec<usize>>,
    /// `map[i]` is the target class containing source class `i`.
    pub map: Vec<usize>,
}

impl ComponentMap {
    /// Number of target classes hit; the size of the persistent π0.
    pub fn rank(&self) -> usize {
        let mut hit = vec![false; self.target.len()];
        self.map.iter().for_each(|&t| hit[t] = true);
        hit.into_iter().filter(|&h| h).count()
    }

    /// `other ∘ self`; `other.source` must equal `self.target`.
    pub fn then(&self, other: &ComponentMap) -> Option<ComponentMap> {
        (self.target == other.source).then(|| ComponentMap {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&t| other.map[t]).collect(),
        })
    }
}

/// Refuses `q > r` unless the diameter is at most `r` (then the identity is
/// continuous anyway, since `c_r` is indiscrete).
pub fn persistent_components(ms: &FiniteMetricSpace, q: f64, r: f64) -> Result<ComponentMap> {
    persistent_components_with_tol(ms, q, r, DEFAULT_TOL)
}

pub fn persistent_components_with_tol(ms: &FiniteMetricSpace, q: f64, r: f64, tol: f64) -> Result<ComponentMap> {
    for s in [q, r] {
        if !(s >= 0.0) {
            return Err(Error::NegativeRadius(s));
        }
    }
    if q > r && ms.diameter() > r + tol {
        return Err(Error::ScaleOrder { q, r });
    }
    let source = components_at_with_tol(ms, q, tol);
    let target = components_at_with_tol(ms, r, tol);
    let mut class_of = vec![0; ms.len()];
    for (k, c) in target.iter().enumerate() {
        c.iter().for_each(|&x| class_of[x] = k);
    }
    let map = source.iter().map(|c| class_of[c[0]]).collect();
    Ok(ComponentMap { source, target, map })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MergeNode {
    pub height: f64,
    /// Node ids: `0..n` are the points, internal nodes follow.
    pub children: Vec<usize>,
}

/// Single-linkage merge tree. Ties produce one node with several children.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MergeTree {
    pub labels: Vec<String>,
    pub nodes: Vec<MergeNode>,
}

pub fn dendrogram(ms: &FiniteMetricSpace) -> MergeTree {
    dendrogram_with_tol(ms, DEFAULT_TOL)
}

pub fn dendrogram_with_tol(ms: &FiniteMetricSpace, tol: f64) -> MergeTree {
    let n = ms.len();
    let mut uf = UnionFind::new(n);
    // Tree node currently representing each union-find root.
    let mut node_of: Vec<usize> = (0..n).collect();
    let mut nodes = Vec::new();
    let mut classes = n;
    for (r, group) in events(ms, tol) {
        let mut touched: Vec<usize> = group.iter().flat_map(|&(i, j)| [uf.find(i), uf.find(j)]).collect();
        touched.sort_unstable();
        touched.dedup();
        let before: Vec<(usize, usize)> = touched.iter().map(|&root| (root, node_of[root])).collect();
        let mut merged = false;
        for &(i, j) in &group {
            merged |= uf.union(i, j);
        }
        if !merged {
            continue;
        }
        let mut by_root: Vec<(usize, Vec<usize>)> = Vec::new();
        for (old_root, node) in before {
            let new_root = uf.find(old_root);
            match by_root.iter_mut().find(|(r, _)| *r == new_root) {
                Some((_, ch)) => ch.push(node),
                None => by_root.push((new_root, vec![node])),
            }
        }
        by_root.sort_by_key(|(r, _)| *r);
        for (root, children) in by_root {
            if children.len() < 2 {
                continue;
            }
            classes -= children.len() - 1;
            node_of[root] = n + nodes.len();
            nodes.push(MergeNode { height: r, children });
        }
        if classes == 1 {
            break;
        }
    }
    MergeTree { labels: ms.labels().to_vec(), nodes }
}

impl MergeTree {
    pub fn leaves(&self) -> usize {
        self.labels.len()
    }

    /// Heights of all merges, one entry per class that disappears.
    pub fn merge_heights(&self) -> Vec<f64> {
        let mut h: Vec<f64> = self
            .nodes
            .iter()
            .flat_map(|node| std::iter::repeat_n(node.height, node.children.len() - 1))
            .collect();
        h.sort_by(f64::total_cmp);
        h
    }

    fn height(&self, id: usize) -> f64 {
        if id < self.leaves() {
            0.0
        } else {
            self.nodes[id - self.leaves()].height
        }
    }

    /// Roots of the forest (one per component at infinite scale).
    pub fn roots(&self) -> Vec<usize> {
        let total = self.leaves() + self.nodes.len();
        let mut has_parent = vec![false; total];
        for node in &self.nodes {
            node.children.iter().for_each(|&c| has_parent[c] = true);
        }
        (0..total).filter(|&i| !has_parent[i]).collect()
    }

    /// Classes at height `h`: merges at or below `h + tol` are applied.
    pub fn cut(&self, h: f64, tol: f64) -> Vec<Vec<usize>> {
        let n = self.leaves();
        let mut uf = UnionFind::new(n);
        let mut rep: Vec<usize> = (0..n).collect();
        for node in &self.nodes {
            let first = rep[node.children[0]];
            rep.push(first);
            if node.height <= h + tol {
                for &c in &node.children[1..] {
                    uf.union(first, rep[c]);
                }
            }
        }
        uf.classes()
    }

    pub fn to_json(&self) -> Value {
        let roots: Vec<Value> = self.roots().into_iter().map(|r| self.node_json(r)).collect();
        if roots.len() == 1 {
            roots.into_iter().next().expect("one root")
        } else {
            json!({ "height": null, "children": roots })
        }
    }

    fn node_json(&self, id: usize) -> Value {
        if id < self.leaves() {
            return json!({ "label": self.labels[id] });
        }
        let node = &self.nodes[id - self.leaves()];
        let children: Vec<Value> = node.children.iter().map(|&c| self.node_json(c)).collect();
        json!({ "height": node.height, "children": children })
    }

    /// Newick string with branch lengths as height differences.
    pub fn to_newick(&self) -> String {
        let roots = self.roots();
        let body: Vec<String> = roots.iter().map(|&r| self.newick_node(r, self.height(r))).collect();
        if body.len() == 1 {
            format!("{};", body[0])
        } else {
            format!("({});", body.join(","))
        }
    }

    fn newick_node(&self, id: usize, parent_height: f64) -> String {
        let length = parent_height - self.height(id);
        if id < self.leaves() {
            return format!("{}:{}", newick_label(&self.labels[id]), fmt_len(length));
        }
        let node = &self.nodes[id - self.leaves()];
        let inner: Vec<String> = node.children.iter().map(|&c| self.newick_node(c, node.height)).collect();
        format!("({}):{}", inner.join(","), fmt_len(length))
    }
}

fn fmt_len(x: f64) -> String {
    let s = format!("{:.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".into()
    } else {
        s.into()
    }
}

fn newick_label(label: &str) -> String {
    if label.chars().any(|c| "()[]':;, \t".contains(c)) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}
