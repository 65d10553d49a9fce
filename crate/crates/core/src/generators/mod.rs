//! Closure spaces built from raw data.

pub mod complex;
pub mod cyclic;
pub mod graph;
pub mod metric;

pub use complex::SimplicialComplex;
pub use cyclic::CyclicSpace;
pub use graph::Digraph;
pub use metric::{FiniteMetricSpace, Metric, MetricMap, DEFAULT_TOL};
