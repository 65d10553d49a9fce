//! Closure spaces of directed graphs: `c_E(U) = U ∪ {v : (w, v) ∈ E, w ∈ U}`.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::IndexOutOfRange { index: w, len: n });
                }
            }
        }
        Ok(Digraph { vertices, edges })
    }

    /// Directed cycle `0 → 1 → … → n−1 → 0`.
    pub fn directed_cycle(n: usize) -> Self {
        let vertices = (0..n).map(|i| i.to_string()).collect();
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph { vertices, edges }
    }

    /// Each undirected edge becomes two arcs.
    pub fn undirected(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let both = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Self::new(vertices, both)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Row `w` is `{w}` plus the out-neighbors of `w`.
    pub fn closure_space(&self) -> Result<FiniteClosureSpace> {
        let n = self.vertices.len();
        let mut rows: Vec<PointSet> = (0..n).map(|w| PointSet::singleton(n, w)).collect();
        for &(u, v) in &self.edges {
            rows[u].insert(v);
        }
        FiniteClosureSpace::new(self.vertices.clone(), rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_cycle_closure() {
        let s = Digraph::directed_cycle(4).closure_space().unwrap();
        assert_eq!(s.row(0).to_vec(), vec![0, 1]);
        assert_eq!(s.row(3).to_vec(), vec![0, 3]);
        assert!(s.validate().passed);
    }

    #[test]
    fn edgeless_graph_is_discrete() {
        let g = Digraph::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert!(g.closure_space().unwrap().is_discrete());
    }

    #[test]
    fn undirected_triangle_is_indiscrete() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let g = Digraph::undirected(labels, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(g.closure_space().unwrap().is_indiscrete());
    }

    #[test]
    fn bad_edge_rejected() {
        assert!(Digraph::new(vec!["a".into()], vec![(0, 1)]).is_err());
    }
}
