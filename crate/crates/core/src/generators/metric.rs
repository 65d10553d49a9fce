//! Finite metric spaces, their closures `c_r`, and `(q, r)`-continuity.
//!
//! `c_r(A) = {x : d(x, A) <= r}` with the closed-ball convention: a point at
//! distance exactly `r` is inside. Comparisons allow an absolute slack of
//! [`DEFAULT_TOL`].
//!
//! On a finite space the ε-δ form of `(q, r)`-continuity collapses to a closed
//! inequality: `f` is `(q, r)`-continuous iff `d(x, x') <= q` implies
//! `d(f(x), f(x')) <= r`. If `d(x, x') <= q` forces the image bound, then for
//! every ε the choice δ = (gap to the next distance above `q`) works; the
//! converse follows by letting ε → 0, since finitely many distances exist.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    /// Circle of circumference 1, first coordinate only:
    /// `d(x, y) = min(|x − y| mod 1, 1 − |x − y| mod 1)`.
    Circle,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
            Metric::Circle => {
                let t = (a[0] - b[0]).rem_euclid(1.0);
                t.min(1.0 - t)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    /// Row-major `n × n`.
    dist: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Checks non-negativity, a zero diagonal and symmetry (within [`DEFAULT_TOL`]).
    pub fn from_matrix(labels: Vec<String>, matrix: &[Vec<f64>]) -> Result<Self> {
        let n = labels.len();
        if matrix.len() != n {
            return Err(Error::InvalidMetric(format!("expected {n} rows, found {}", matrix.len())));
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMetric(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidMetric(format!("dist[{i}][{j}] = {d} is not a non-negative number")));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidMetric(format!("dist[{i}][{i}] must be 0")));
                }
            }
            dist.extend_from_slice(row);
        }
        for i in 0..n {
            for j in 0..i {
                if (dist[i * n + j] - dist[j * n + i]).abs() > DEFAULT_TOL {
                    return Err(Error::InvalidMetric(format!("dist[{i}][{j}] != dist[{j}][{i}]")));
                }
            }
        }
        check_labels(&labels)?;
        Ok(FiniteMetricSpace { labels, dist })
    }

    pub fn from_points(labels: Vec<String>, points: &[Vec<f64>], metric: Metric) -> Result<Self> {
        let n = points.len();
        if labels.len() != n {
            return Err(Error::InvalidMetric(format!("{} labels for {n} points", labels.len())));
        }
        if let Some(first) = points.first() {
            let dim = first.len();
            if dim == 0 {
                return Err(Error::InvalidMetric("points have no coordinates".into()));
            }
            if let Some(i) = points.iter().position(|p| p.len() != dim) {
                return Err(Error::InvalidMetric(format!("point {i} has {} coordinates, expected {dim}", points[i].len())));
            }
            if let Some(i) = points.iter().position(|p| p.iter().any(|c| !c.is_finite())) {
                return Err(Error::InvalidMetric(format!("point {i} has a non-finite coordinate")));
            }
        }
        check_labels(&labels)?;
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let d = metric.distance(&points[i], &points[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Points on a line, labelled by index.
    pub fn on_line(xs: &[f64]) -> Self {
        let pts: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        Self::from_points(index_labels(xs.len()), &pts, Metric::Euclidean).expect("finite coordinates")
    }

    /// Points on the circumference-1 circle, labelled by index.
    pub fn on_circle(ts: &[f64]) -> Self {
        let pts: Vec<Vec<f64>> = ts.iter().map(|&t| vec![t]).collect();
        Self::from_points(index_labels(ts.len()), &pts, Metric::Circle).expect("finite coordinates")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    pub fn satisfies_triangle_inequality(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.distance(i, k) <= self.distance(i, j) + self.distance(j, k) + DEFAULT_TOL))
        })
    }

    pub fn metric_closure(&self, r: f64) -> Result<FiniteClosureSpace> {
        self.metric_closure_with_tol(r, DEFAULT_TOL)
    }

    /// `y ∈ c_r({x})` iff `d(x, y) <= r + tol`.
    pub fn metric_closure_with_tol(&self, r: f64, tol: f64) -> Result<FiniteClosureSpace> {
        if !(r >= 0.0) {
            return Err(Error::NegativeRadius(r));
        }
        let n = self.len();
        let bound = r + tol;
        let rows = (0..n)
            .map(|i| {
                let mut row = PointSet::empty(n);
                for (j, &d) in self.row(i).iter().enumerate() {
                    if d <= bound {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(FiniteClosureSpace::from_parts_unchecked(self.labels.clone(), rows))
    }
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// A function between the points of two finite metric spaces.
#[derive(Clone, Debug)]
pub struct MetricMap<'a> {
    domain: &'a FiniteMetricSpace,
    codomain: &'a FiniteMetricSpace,
    values: Vec<usize>,
}

impl<'a> MetricMap<'a> {
    pub fn new(domain: &'a FiniteMetricSpace, codomain: &'a FiniteMetricSpace, values: Vec<usize>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::MapLength { expected: domain.len(), found: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::IndexOutOfRange { index: v, len: codomain.len() });
        }
        Ok(MetricMap { domain, codomain, values })
    }

    pub fn domain(&self) -> &'a FiniteMetricSpace {
        self.domain
    }

    pub fn codomain(&self) -> &'a FiniteMetricSpace {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_qr_continuous(&self, q: f64, r: f64) -> Result<bool> {
        Ok(self.qr_violation(q, r)?.is_none())
    }

    /// A pair `(x, x')` with `d(x, x') <= q` but `d(f(x), f(x')) > r`.
    pub fn qr_violation(&self, q: f64, r: f64) -> Result<Option<(usize, usize)>> {
        self.qr_violation_with_tol(q, r, DEFAULT_TOL)
    }

    pub fn qr_violation_with_tol(&self, q: f64, r: f64, tol: f64) -> Result<Option<(usize, usize)>> {
        if !(q >= 0.0) {
            return Err(Error::NegativeRadius(q));
        }
        if !(r >= 0.0) {
            return Err(Error::NegativeRadius(r));
        }
        let (qb, rb) = (q + tol, r + tol);
        let n = self.domain.len();
        for i in 0..n {
            let fi = self.values[i];
            let image_row = self.codomain.row(fi);
            for (j, &d) in self.domain.row(i).iter().enumerate().skip(i + 1) {
                if d <= qb && image_row[self.values[j]] > rb {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}
