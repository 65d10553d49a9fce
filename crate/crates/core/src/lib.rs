//! Finite Čech closure spaces: constructions, continuity, discrete homotopy,
//! coverings and persistent components.
//!
//! A space on `n` points is stored as the closures of its singletons; by
//! additivity these determine `c(A)` for every `A`.

pub mod constructions;
pub mod covering;
pub mod error;
pub mod generators;
pub mod homotopy;
pub mod io;
pub mod map;
pub mod persistence;
pub mod pointset;
pub mod space;

pub use covering::{CoveringCandidate, CoveringVerdict, LiftCount};
pub use error::{Error, Result};
pub use generators::{CyclicSpace, Digraph, FiniteMetricSpace, Metric, MetricMap, SimplicialComplex};
pub use homotopy::{DiscreteLoop, DiscretePath, HomotopySearch, Move, Verdict, WedgeSpace, Word};
pub use map::SpaceMap;
pub use persistence::{pi0_barcode, Barcode, MergeTree};
pub use pointset::PointSet;
pub use space::FiniteClosureSpace;
