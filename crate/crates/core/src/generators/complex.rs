//! Simplicial complexes and the closure on their `k`-simplices.
//!
//! For `k`-simplices `σ ≠ γ`, `γ ∈ c({σ})` iff `γ ∩ σ` is a `(k−1)`-simplex
//! or `γ ∪ σ` is a `(k+1)`-simplex of the complex. There are no
//! `(−1)`-simplices, so for `k = 0` only the second cause applies.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

/// Simplices with more vertices than this are rejected, as their face
/// completion enumerates every subset.
pub const MAX_SIMPLEX_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// Sorted vertex lists, closed under taking non-empty faces.
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Adds every non-empty face of the given simplices.
    pub fn new(vertices: Vec<String>, simplices: &[Vec<usize>]) -> Result<Self> {
        let n = vertices.len();
        let mut all = BTreeSet::new();
        for (i, s) in simplices.iter().enumerate() {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!("simplex {i} uses vertex {v}, only {n} vertices")));
            }
            if s.len() > MAX_SIMPLEX_VERTICES {
                return Err(Error::InvalidComplex(format!(
                    "simplex {i} has {} vertices, limit is {MAX_SIMPLEX_VERTICES}",
                    s.len()
                )));
            }
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> = s.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect();
                all.insert(face);
            }
        }
        for v in 0..n {
            all.insert(vec![v]);
        }
        Ok(SimplicialComplex { vertices, simplices: all })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    /// Simplices of dimension `k`, i.e. with `k + 1` vertices, in lexicographic order.
    pub fn of_dimension(&self, k: usize) -> Vec<&Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == k + 1).collect()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.simplices.contains(simplex)
    }

    /// The closure space whose points are the `k`-simplices. Labels are the
    /// vertex labels joined with `,` in brackets.
    pub fn skeleton_closure(&self, k: usize) -> Result<FiniteClosureSpace> {
        let points = self.of_dimension(k);
        let n = points.len();
        let faces: HashSet<&Vec<usize>> = if k == 0 {
            HashSet::new()
        } else {
            self.of_dimension(k - 1).into_iter().collect()
        };
        let cofaces: HashSet<&Vec<usize>> = self.of_dimension(k + 1).into_iter().collect();
        let mut rows = Vec::with_capacity(n);
        for (i, sigma) in points.iter().enumerate() {
            let mut row = PointSet::singleton(n, i);
            for (j, gamma) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let meet: Vec<usize> = sigma.iter().filter(|v| gamma.contains(v)).copied().collect();
                let mut join: Vec<usize> = sigma.iter().chain(gamma.iter()).copied().collect();
                join.sort_unstable();
                join.dedup();
                if faces.contains(&meet) || cofaces.contains(&join) {
                    row.insert(j);
                }
            }
            rows.push(row);
        }
        let labels = points
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
                format!("[{}]", names.join(","))
            })
            .collect();
        FiniteClosureSpace::new(labels, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn faces_are_completed() {
        let c = SimplicialComplex::new(abc(), &[vec![2, 0, 1]]).unwrap();
        assert_eq!(c.simplices().count(), 7);
        assert!(c.contains(&[0, 2]));
        assert_eq!(c.dimension(), Some(2));
    }

    #[test]
    fn hollow_triangle_edges() {
        let c = SimplicialComplex::new(abc(), &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let s = c.skeleton_closure(1).unwrap();
        assert_eq!(s.labels(), &["[a,b]", "[a,c]", "[b,c]"]);
        assert_eq!(s.row(0).to_vec(), vec![0, 1, 2]);
        assert!(s.is_symmetric());
    }

    #[test]
    fn filled_triangle_vertices() {
        let c = SimplicialComplex::new(abc(), &[vec![0, 1, 2]]).unwrap();
        let s = c.skeleton_closure(0).unwrap();
        assert_eq!(s.row(0).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn vertex_skeleton_is_edge_adjacency() {
        // path a - b - c: a and c are not adjacent
        let c = SimplicialComplex::new(abc(), &[vec![0, 1], vec![1, 2]]).unwrap();
        let s = c.skeleton_closure(0).unwrap();
        assert_eq!(s.closure_lists(), vec![vec![0, 1], vec![0, 1, 2], vec![1, 2]]);
    }

    #[test]
    fn high_k_gives_empty_space() {
        let c = SimplicialComplex::new(abc(), &[vec![0, 1]]).unwrap();
        assert!(c.skeleton_closure(3).unwrap().is_empty());
    }

    #[test]
    fn out_of_range_vertex() {
        assert!(SimplicialComplex::new(abc(), &[vec![0, 5]]).is_err());
    }
}
