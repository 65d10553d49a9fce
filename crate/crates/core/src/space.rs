//! Finite Čech closure spaces.
//!
//! On a finite set a closure operator is determined by its values on
//! singletons: additivity gives `c(A) = ⋃_{x ∈ A} c({x})`. A space is therefore
//! stored as one row per point, row `x` being `c({x})`. The empty set closes
//! to itself and finite additivity hold by construction; reflexivity
//! (`x ∈ c({x})`) is the one axiom that has to be checked.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteClosureSpace {
    labels: Vec<String>,
    rows: Vec<PointSet>,
}

/// Outcome of checking the closure axioms on a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    /// Labels of points whose closure misses the point itself.
    pub non_reflexive: Vec<String>,
    /// `c(∅) = ∅` and `c(A ∪ B) = c(A) ∪ c(B)` hold for the row representation.
    pub additivity: &'static str,
}

impl FiniteClosureSpace {
    /// Builds a space and checks every closure axiom.
    pub fn new(labels: Vec<String>, rows: Vec<PointSet>) -> Result<Self> {
        let space = Self::raw(labels, rows)?;
        if let Some(x) = (0..space.len()).find(|&x| !space.rows[x].contains(x)) {
            return Err(Error::NotReflexive(x));
        }
        Ok(space)
    }

    /// Builds a space without checking reflexivity, so that [`validate`] can
    /// report on it. Everything else in this crate assumes a valid space.
    ///
    /// [`validate`]: FiniteClosureSpace::validate
    pub fn raw(labels: Vec<String>, rows: Vec<PointSet>) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::RowCount { expected: n, found: rows.len() });
        }
        let mut seen = HashSet::with_capacity(n);
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for row in &rows {
            if row.universe() != n {
                return Err(Error::RowCount { expected: n, found: row.universe() });
            }
        }
        Ok(FiniteClosureSpace { labels, rows })
    }

    /// Builds a space from explicit closure lists, `closures[x] = c({x})`.
    pub fn from_closures(labels: Vec<String>, closures: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        let rows = closures
            .iter()
            .map(|c| PointSet::from_indices(n, c.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, rows)
    }

    /// Same as [`from_closures`](Self::from_closures) with labels `"0"`, `"1"`, ...
    pub fn with_index_labels(closures: &[Vec<usize>]) -> Result<Self> {
        let labels = (0..closures.len()).map(|i| i.to_string()).collect();
        Self::from_closures(labels, closures)
    }

    /// The closure relation given as a boolean matrix, `matrix[x][y]` iff `y ∈ c({x})`.
    pub fn from_matrix(labels: Vec<String>, matrix: &[Vec<bool>]) -> Result<Self> {
        let closures: Vec<Vec<usize>> = matrix
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
            .collect();
        Self::from_closures(labels, &closures)
    }

    pub fn discrete(labels: Vec<String>) -> Self {
        let n = labels.len();
        let rows = (0..n).map(|x| PointSet::singleton(n, x)).collect();
        FiniteClosureSpace { labels, rows }
    }

    pub fn indiscrete(labels: Vec<String>) -> Self {
        let n = labels.len();
        let rows = (0..n).map(|_| PointSet::full(n)).collect();
        FiniteClosureSpace { labels, rows }
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

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `c({x})`.
    pub fn row(&self, x: usize) -> &PointSet {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    /// Closure lists per point, ascending, as used by the JSON format.
    pub fn closure_lists(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(PointSet::to_vec).collect()
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn whole(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<PointSet> {
        PointSet::from_indices(self.len(), indices)
    }

    pub fn validate(&self) -> ValidationReport {
        let non_reflexive: Vec<String> = (0..self.len())
            .filter(|&x| !self.rows[x].contains(x))
            .map(|x| self.labels[x].clone())
            .collect();
        ValidationReport {
            passed: non_reflexive.is_empty(),
            non_reflexive,
            additivity: "satisfied by construction",
        }
    }

    pub fn closure(&self, a: &PointSet) -> PointSet {
        assert_eq!(a.universe(), self.len());
        let mut out = self.empty_set();
        for x in a.iter() {
            out.union_with(&self.rows[x]);
        }
        out
    }

    /// `X − c(X − A)`.
    pub fn interior(&self, a: &PointSet) -> PointSet {
        self.closure(&a.complement()).complement()
    }

    pub fn is_closed(&self, a: &PointSet) -> bool {
        &self.closure(a) == a
    }

    pub fn is_open(&self, a: &PointSet) -> bool {
        self.is_closed(&a.complement())
    }

    /// `U` is a neighborhood of `A` iff `A ⊆ int(U)`.
    pub fn is_neighborhood(&self, u: &PointSet, a: &PointSet) -> bool {
        a.is_subset(&self.interior(u))
    }

    /// The least neighborhood of `x`: every `a` with `x ∈ c({a})`.
    pub fn minimal_neighborhood(&self, x: usize) -> PointSet {
        let mut out = self.empty_set();
        for (a, row) in self.rows.iter().enumerate() {
            if row.contains(x) {
                out.insert(a);
            }
        }
        out
    }

    /// `self` is finer than `other` when `c_self(A) ⊆ c_other(A)` for every `A`.
    pub fn finer_than(&self, other: &FiniteClosureSpace) -> Result<bool> {
        if self.labels != other.labels {
            return Err(Error::LabelMismatch);
        }
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b)))
    }

    /// Some `x` with `c(c({x})) ≠ c({x})`, together with both sets.
    pub fn idempotence_failure(&self) -> Option<(usize, PointSet, PointSet)> {
        (0..self.len()).find_map(|x| {
            let once = self.rows[x].clone();
            let twice = self.closure(&once);
            (twice != once).then_some((x, once, twice))
        })
    }

    /// A closure is topological (Kuratowski) iff every closed-set closure is
    /// closed, which for finite spaces means the relation is transitive.
    pub fn is_topological(&self) -> bool {
        self.idempotence_failure().is_none()
    }

    /// The finest topological closure coarser than this one: the transitive
    /// closure of the relation.
    pub fn tau_modification(&self) -> FiniteClosureSpace {
        let mut rows = self.rows.clone();
        let n = self.len();
        for k in 0..n {
            let via = rows[k].clone();
            for row in rows.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        FiniteClosureSpace {
            labels: self.labels.clone(),
            rows,
        }
    }

    /// `x` and `y` are one step apart: `y ∈ c({x})` or `x ∈ c({y})`.
    pub fn is_step(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y) || self.rows[y].contains(x)
    }

    /// Points one step away from `x` in either direction, `x` included.
    pub fn step_neighbors(&self, x: usize) -> PointSet {
        let mut out = self.rows[x].clone();
        out.union_with(&self.minimal_neighborhood(x));
        out
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let adjacency: Vec<PointSet> = (0..n).map(|x| self.step_neighbors(x)).collect();
        let mut unvisited = self.whole();
        let mut out = Vec::new();
        while let Some(seed) = unvisited.first() {
            unvisited.remove(seed);
            let mut comp = vec![seed];
            let mut stack = vec![seed];
            while let Some(x) = stack.pop() {
                let fresh = adjacency[x].intersection(&unvisited);
                unvisited.difference_with(&fresh);
                for y in fresh.iter() {
                    comp.push(y);
                    stack.push(y);
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty space counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `(c(A) ∩ B) ∪ (A ∩ c(B)) = ∅`.
    pub fn semi_separated(&self, a: &PointSet, b: &PointSet) -> bool {
        self.closure(a).is_disjoint(b) && self.closure(b).is_disjoint(a)
    }

    /// Every point has a neighborhood in the family.
    pub fn is_interior_cover(&self, family: &[PointSet]) -> bool {
        let mut covered = self.empty_set();
        for u in family {
            covered.union_with(&self.interior(u));
        }
        covered.len() == self.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.rows.iter().all(|r| r.len() == 1)
    }

    pub fn is_indiscrete(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.len())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|x| self.rows[x].iter().all(|y| self.rows[y].contains(x)))
    }

    pub(crate) fn from_parts_unchecked(labels: Vec<String>, rows: Vec<PointSet>) -> Self {
        debug_assert_eq!(labels.len(), rows.len());
        FiniteClosureSpace { labels, rows }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{p4, q3};
    use super::*;
    use crate::generators::cyclic::CyclicSpace;

    fn set(s: &FiniteClosureSpace, ix: &[usize]) -> PointSet {
        s.set(ix.iter().copied()).unwrap()
    }

    fn z(n: usize, m: usize) -> FiniteClosureSpace {
        CyclicSpace::new(n, m).unwrap().space()
    }

    #[test]
    fn validate_reports_reflexivity() {
        assert!(p4().validate().passed);
        assert!(FiniteClosureSpace::with_index_labels(&[]).unwrap().validate().passed);

        let labels = vec!["a".to_string(), "b".to_string()];
        let rows = vec![PointSet::from_indices(2, [1]).unwrap(), PointSet::singleton(2, 1)];
        let broken = FiniteClosureSpace::raw(labels.clone(), rows.clone()).unwrap();
        let report = broken.validate();
        assert!(!report.passed);
        assert_eq!(report.non_reflexive, vec!["a".to_string()]);
        assert_eq!(FiniteClosureSpace::new(labels, rows), Err(Error::NotReflexive(0)));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let labels = vec!["a".to_string(), "a".to_string()];
        assert!(matches!(
            FiniteClosureSpace::from_closures(labels, &[vec![0], vec![1]]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let s = p4();
        assert_eq!(s.closure(&set(&s, &[0])).to_vec(), vec![0, 1]);
        assert!(s.closure(&s.empty_set()).is_empty());
        assert_eq!(s.closure(&set(&s, &[0, 2])).to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn interior_examples() {
        let s = p4();
        assert_eq!(s.interior(&set(&s, &[0, 1])).to_vec(), vec![0, 1]);
        assert_eq!(s.interior(&s.whole()), s.whole());
        // X − c({2,3,4}) = X − {2,3,4} = {1}
        assert_eq!(s.interior(&set(&s, &[0])).to_vec(), vec![0]);
    }

    #[test]
    fn open_and_closed_examples() {
        let s = p4();
        assert!(s.is_closed(&set(&s, &[1])));
        assert!(s.is_open(&s.empty_set()) && s.is_closed(&s.empty_set()));
        let a = set(&s, &[0, 1]);
        assert!(s.is_open(&a) && s.is_closed(&a));
        assert!(!s.is_closed(&set(&s, &[0])));
    }

    #[test]
    fn neighborhood_examples() {
        let s = p4();
        assert!(s.is_neighborhood(&set(&s, &[0, 1]), &set(&s, &[0])));
        assert!(s.is_neighborhood(&s.whole(), &set(&s, &[2, 3])));
        assert!(!s.is_neighborhood(&set(&s, &[1]), &set(&s, &[0])));
    }

    #[test]
    fn minimal_neighborhood_examples() {
        let s = p4();
        assert_eq!(s.minimal_neighborhood(1).to_vec(), vec![0, 1]);
        let d = FiniteClosureSpace::discrete(vec!["a".into(), "b".into()]);
        assert_eq!(d.minimal_neighborhood(1).to_vec(), vec![1]);
        assert_eq!(z(7, 2).minimal_neighborhood(0).to_vec(), vec![0, 1, 2, 5, 6]);
    }

    #[test]
    fn finer_than_examples() {
        assert_eq!(z(7, 1).finer_than(&z(7, 2)), Ok(true));
        assert_eq!(z(7, 2).finer_than(&z(7, 2)), Ok(true));
        assert_eq!(z(7, 2).finer_than(&z(7, 1)), Ok(false));
        assert_eq!(z(7, 2).finer_than(&z(6, 2)), Err(Error::LabelMismatch));
    }

    #[test]
    fn topological_examples() {
        assert!(p4().is_topological());
        let q = q3();
        assert!(!q.is_topological());
        let (x, once, twice) = q.idempotence_failure().unwrap();
        assert_eq!((x, once.to_vec(), twice.to_vec()), (0, vec![0, 1], vec![0, 1, 2]));
        assert!(FiniteClosureSpace::discrete(vec!["a".into()]).is_topological());
    }

    #[test]
    fn tau_examples() {
        let t = q3().tau_modification();
        assert_eq!(t.closure_lists(), vec![vec![0, 1, 2], vec![1, 2], vec![2]]);
        assert!(t.is_topological());
        assert_eq!(p4().tau_modification(), p4());
        assert!(z(7, 1).tau_modification().is_indiscrete());
    }

    #[test]
    fn component_examples() {
        assert_eq!(p4().components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(!p4().is_connected());
        assert!(FiniteClosureSpace::discrete(vec!["a".into()]).is_connected());
        assert!(z(7, 2).is_connected());
        assert!(FiniteClosureSpace::with_index_labels(&[]).unwrap().is_connected());
    }

    #[test]
    fn semi_separation_examples() {
        let s = p4();
        assert!(s.semi_separated(&set(&s, &[0, 1]), &set(&s, &[2, 3])));
        let a = set(&s, &[2]);
        assert!(!s.semi_separated(&a, &a));
        assert!(!s.semi_separated(&set(&s, &[0]), &set(&s, &[1])));
    }

    #[test]
    fn interior_cover_examples() {
        let s = z(4, 1);
        let arc = |k: usize| set(&s, &[(k + 3) % 4, k, (k + 1) % 4]);
        let all: Vec<_> = (0..4).map(arc).collect();
        assert!(s.is_interior_cover(&all));
        assert!(!s.is_interior_cover(&[arc(0), arc(2)]));
        assert!(s.is_interior_cover(&[s.whole()]));
        let empty = FiniteClosureSpace::with_index_labels(&[]).unwrap();
        assert!(empty.is_interior_cover(&[]));
    }
}
