//! Discrete paths, elementary-move homotopy, and the invariants that decide it
//! on cyclic spaces and their wedges.

pub mod moves;
pub mod path;
pub mod search;
pub mod wedge;
pub mod winding;

use std::collections::VecDeque;

use serde::Serialize;

pub use moves::{apply_trace, Move};
pub use path::{DiscreteLoop, DiscretePath};
pub use search::{HomotopySearch, InvariantValue, LoopInvariant, Verdict};
pub use wedge::{Generator, WedgeSpace, Word};
pub use winding::winding;

use crate::error::Result;
use crate::space::FiniteClosureSpace;

/// Path components as labelled classes. On a finite space they coincide with
/// the connected components.
pub fn pi0(space: &FiniteClosureSpace) -> Vec<Vec<String>> {
    space
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|x| space.label(x).to_string()).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullContraction {
    pub contractible: bool,
    pub reason: NullReason,
    /// Generator loops examined.
    pub checked: usize,
    /// First loop that could not be contracted, with its verdict.
    pub failure: Option<(Vec<usize>, Verdict)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NullReason {
    Indiscrete,
    AllGeneratorsContract,
    Separated,
    Undecided,
}

/// BFS tree of the step graph from `root`: parent per reached point.
fn step_tree(space: &FiniteClosureSpace, root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; space.len()];
    parent[root] = Some(root);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for y in space.step_neighbors(x).iter() {
            if parent[y].is_none() {
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    parent
}

fn tree_path(parent: &[Option<usize>], root: usize, to: usize) -> Vec<usize> {
    let mut out = vec![to];
    let mut cur = to;
    while cur != root {
        cur = parent[cur].expect("reached point");
        out.push(cur);
    }
    out.reverse();
    out
}

/// Loops `root → u → v → root` along a spanning tree of the step graph, one
/// per step `{u, v}` outside the tree. They generate every loop at `root`
/// up to the elementary moves.
pub fn generator_loops(space: &FiniteClosureSpace, root: usize) -> Vec<Vec<usize>> {
    let parent = step_tree(space, root);
    let mut out = Vec::new();
    for u in 0..space.len() {
        if parent[u].is_none() {
            continue;
        }
        for v in space.step_neighbors(u).iter().filter(|&v| v > u) {
            if parent[v] == Some(u) || parent[u] == Some(v) {
                continue;
            }
            let mut l = tree_path(&parent, root, u);
            let mut back = tree_path(&parent, root, v);
            back.reverse();
            l.extend(back);
            out.push(l);
        }
    }
    out
}

/// Whether every loop contracts: trivially so in an indiscrete space,
/// otherwise each generator loop at the smallest point of each component
/// must be shown homotopic to the constant loop.
pub fn null_contraction(search: &HomotopySearch<'_>) -> Result<NullContraction> {
    let space = search.space();
    if space.is_indiscrete() {
        return Ok(NullContraction { contractible: true, reason: NullReason::Indiscrete, checked: 0, failure: None });
    }
    let mut checked = 0;
    for comp in space.components() {
        let root = comp[0];
        for l in generator_loops(space, root) {
            checked += 1;
            let v = search.homotopic_points(&l, &[root])?;
            if !v.is_yes() {
                let reason = if v.is_no() { NullReason::Separated } else { NullReason::Undecided };
                return Ok(NullContraction { contractible: false, reason, checked, failure: Some((l, v)) });
            }
        }
    }
    Ok(NullContraction { contractible: true, reason: NullReason::AllGeneratorsContract, checked, failure: None })
}

pub fn null_contraction_exists(space: &FiniteClosureSpace, cap: Option<usize>) -> Result<bool> {
    let mut search = HomotopySearch::new(space);
    if let Some(c) = cap {
        search = search.cap(c);
    }
    Ok(null_contraction(&search)?.contractible)
}
