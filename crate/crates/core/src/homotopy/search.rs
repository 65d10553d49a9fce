//! Deciding homotopy of discrete loops by searching over elementary moves.
//!
//! The search is sound but not complete. A `Yes` carries a move sequence
//! that turns one loop into the other and can be replayed with
//! [`apply_trace`](super::moves::apply_trace). A `No` is only returned when a
//! complete invariant (winding number or wedge word) separates the loops.
//! Everything else is `Unknown`.
//!
//! Both loops are first shortened greedily. The shorter forms are then joined
//! by breadth-first search over repetition-free sequences, where one search
//! step is a substitution (plus the deletions it causes), the insertion of a
//! point between two neighbours, or the insertion of a back-and-forth spike.
//! Each search stops as soon as it reaches the other loop or a sequence that
//! shortens below its start; the longer side is always the one searched, and
//! the length bound grows one point at a time up to the cap.

use std::collections::{HashMap, VecDeque};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::CyclicSpace;
use crate::homotopy::moves::{collapse_repeats, invert_trace, reduce, Move};
use crate::homotopy::path::DiscreteLoop;
use crate::homotopy::wedge::WedgeSpace;
use crate::homotopy::winding::winding;
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

/// Default cap on the number of sequences visited by one call.
pub const DEFAULT_BUDGET: usize = 250_000;

/// A complete homotopy invariant for loops in a specific family of spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopInvariant {
    Winding(CyclicSpace),
    WedgeWord(WedgeSpace),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum InvariantValue {
    Winding(i64),
    Word(String),
}

impl LoopInvariant {
    /// The winding number, when the space is a cyclic space with `3 <= 3m < n`.
    pub fn detect(space: &FiniteClosureSpace) -> Option<LoopInvariant> {
        CyclicSpace::recognize(space)
            .filter(CyclicSpace::in_covering_regime)
            .map(LoopInvariant::Winding)
    }

    pub fn name(&self) -> &'static str {
        match self {
            LoopInvariant::Winding(_) => "winding",
            LoopInvariant::WedgeWord(_) => "wedge_word",
        }
    }

    pub fn evaluate(&self, points: &[usize]) -> Result<InvariantValue> {
        match self {
            LoopInvariant::Winding(c) => winding(c, points).map(InvariantValue::Winding),
            LoopInvariant::WedgeWord(w) => w.word(points).map(|w| InvariantValue::Word(w.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Moves turning the first loop into the second.
    Yes { trace: Vec<Move> },
    No {
        invariant: &'static str,
        left: InvariantValue,
        right: InvariantValue,
    },
    /// The search ran out of length or budget.
    Unknown { explored: usize },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes { .. } => "yes",
            Verdict::No { .. } => "no",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

type Connection = std::result::Result<Vec<Move>, usize>;

pub struct HomotopySearch<'s> {
    space: &'s FiniteClosureSpace,
    invariant: Option<LoopInvariant>,
    cap: Option<usize>,
    budget: usize,
    adjacency: Vec<PointSet>,
    cache: Mutex<HashMap<(Vec<usize>, Vec<usize>, usize), Connection>>,
}

impl<'s> HomotopySearch<'s> {
    /// Uses [`LoopInvariant::detect`] to pick an invariant.
    pub fn new(space: &'s FiniteClosureSpace) -> Self {
        let invariant = LoopInvariant::detect(space);
        Self::with_invariant(space, invariant)
    }

    pub fn with_invariant(space: &'s FiniteClosureSpace, invariant: Option<LoopInvariant>) -> Self {
        let adjacency = (0..space.len()).map(|x| space.step_neighbors(x)).collect();
        HomotopySearch {
            space,
            invariant,
            cap: None,
            budget: DEFAULT_BUDGET,
            adjacency,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn for_wedge(wedge: &'s WedgeSpace) -> Self {
        Self::with_invariant(wedge.space(), Some(LoopInvariant::WedgeWord(wedge.clone())))
    }

    /// Longest sequence (in points) the search may pass through. Defaults to
    /// `2 · (longer input) + |X|`.
    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn invariant(&self) -> Option<&LoopInvariant> {
        self.invariant.as_ref()
    }

    pub fn space(&self) -> &'s FiniteClosureSpace {
        self.space
    }

    pub fn homotopic(&self, a: &DiscreteLoop<'_>, b: &DiscreteLoop<'_>) -> Result<Verdict> {
        for l in [a, b] {
            if !std::ptr::eq(l.space(), self.space) && l.space() != self.space {
                return Err(Error::SpaceMismatch);
            }
        }
        if a.basepoint() != b.basepoint() {
            return Err(Error::BasepointMismatch(a.basepoint(), b.basepoint()));
        }
        self.homotopic_points(a.points(), b.points())
    }

    /// Same as [`homotopic`](Self::homotopic) on raw, already validated loops.
    pub fn homotopic_points(&self, a: &[usize], b: &[usize]) -> Result<Verdict> {
        if let Some(inv) = &self.invariant {
            let (left, right) = (inv.evaluate(a)?, inv.evaluate(b)?);
            if left != right {
                return Ok(Verdict::No { invariant: inv.name(), left, right });
            }
        }
        let cap = self.cap.unwrap_or(2 * a.len().max(b.len()) + self.space.len());
        let (ra, ta) = reduce(self.space, a);
        let (rb, tb) = reduce(self.space, b);
        match self.connect_cached(ra, rb, cap) {
            Ok(middle) => {
                let mut trace = ta;
                trace.extend(middle);
                trace.extend(invert_trace(&tb));
                Ok(Verdict::Yes { trace })
            }
            Err(explored) => Ok(Verdict::Unknown { explored }),
        }
    }

    fn connect_cached(&self, a: Vec<usize>, b: Vec<usize>, cap: usize) -> Connection {
        let key = (a, b, cap);
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let result = self.connect(&key.0, &key.1, cap);
        self.cache.lock().expect("cache poisoned").insert(key, result.clone());
        result
    }

    fn connect(&self, a: &[usize], b: &[usize], cap: usize) -> Connection {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        let (mut tx, mut ty) = (Vec::new(), Vec::new());
        let mut explored = 0;
        while x != y {
            let from_y = y.len() > x.len();
            let (cur, other) = if from_y { (&y, &x) } else { (&x, &y) };
            let (next, moves) = self.descend(cur, other, cap, &mut explored).ok_or(explored)?;
            if from_y {
                y = next;
                ty.extend(moves);
            } else {
                x = next;
                tx.extend(moves);
            }
        }
        tx.extend(invert_trace(&ty));
        Ok(tx)
    }

    /// Breadth-first search from `start` for `target` or for any sequence
    /// that reduces to fewer points than `start`.
    fn descend(&self, start: &[usize], target: &[usize], cap: usize, explored: &mut usize) -> Option<(Vec<usize>, Vec<Move>)> {
        for bound in start.len().max(target.len())..=cap.max(start.len()) {
            let mut parent: HashMap<Vec<usize>, (Vec<usize>, Vec<Move>)> = HashMap::new();
            let mut queue = VecDeque::new();
            parent.insert(start.to_vec(), (Vec::new(), Vec::new()));
            queue.push_back(start.to_vec());
            let mut saturated = true;
            while let Some(state) = queue.pop_front() {
                if state.len() + 1 >= bound {
                    saturated = false;
                }
                for (next, moves) in self.neighbors(&state, bound) {
                    if parent.contains_key(&next) {
                        continue;
                    }
                    *explored += 1;
                    if *explored > self.budget {
                        return None;
                    }
                    parent.insert(next.clone(), (state.clone(), moves));
                    let found = if next == target {
                        Some((next.clone(), Vec::new()))
                    } else {
                        let (r, t) = reduce(self.space, &next);
                        (r.len() < start.len()).then_some((r, t))
                    };
                    if let Some((end, tail)) = found {
                        let mut trace = path_moves(&parent, &next);
                        trace.extend(tail);
                        return Some((end, trace));
                    }
                    queue.push_back(next);
                }
            }
            // No state came near the bound, so raising it cannot help.
            if saturated {
                return None;
            }
        }
        None
    }

    fn neighbors(&self, pts: &[usize], bound: usize) -> Vec<(Vec<usize>, Vec<Move>)> {
        let len = pts.len();
        let mut out = Vec::new();
        for index in 1..len.saturating_sub(1) {
            let from = pts[index];
            let mut cands = self.adjacency[pts[index - 1]].intersection(&self.adjacency[pts[index + 1]]);
            cands.intersect_with(&self.adjacency[from]);
            for to in cands.iter().filter(|&to| to != from) {
                let mut next = pts.to_vec();
                next[index] = to;
                let mut moves = vec![Move::Substitute { index, from, to }];
                collapse_repeats(&mut next, &mut moves);
                out.push((next, moves));
            }
        }
        if len < bound {
            for index in 0..len - 1 {
                let (p, q) = (pts[index], pts[index + 1]);
                let cands = self.adjacency[p].intersection(&self.adjacency[q]);
                for to in cands.iter().filter(|&to| to != p && to != q) {
                    let mut next = pts.to_vec();
                    next.insert(index + 1, to);
                    out.push((next, vec![Move::InsertRepeat { index }, Move::Substitute { index: index + 1, from: p, to }]));
                }
            }
        }
        if len + 1 < bound {
            for (index, &p) in pts.iter().enumerate() {
                for to in self.adjacency[p].iter().filter(|&to| to != p) {
                    if pts.get(index + 1) == Some(&to) || (index > 0 && pts[index - 1] == to) {
                        continue;
                    }
                    let mut next = pts.to_vec();
                    next.splice(index + 1..index + 1, [to, p]);
                    out.push((
                        next,
                        vec![
                            Move::InsertRepeat { index },
                            Move::InsertRepeat { index },
                            Move::Substitute { index: index + 1, from: p, to },
                        ],
                    ));
                }
            }
        }
        out
    }
}

fn path_moves(parent: &HashMap<Vec<usize>, (Vec<usize>, Vec<Move>)>, end: &[usize]) -> Vec<Move> {
    let mut chunks = Vec::new();
    let mut cur = end.to_vec();
    loop {
        let (prev, moves) = &parent[&cur];
        if moves.is_empty() {
            break;
        }
        chunks.push(moves.clone());
        cur = prev.clone();
    }
    chunks.into_iter().rev().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::moves::apply_trace;

    fn z(n: usize, m: usize) -> FiniteClosureSpace {
        CyclicSpace::new(n, m).unwrap().space()
    }

    fn check_yes(space: &FiniteClosureSpace, a: &[usize], b: &[usize], v: &Verdict) {
        match v {
            Verdict::Yes { trace } => assert_eq!(apply_trace(space, a, trace).unwrap(), b),
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn indiscrete_loop_contracts() {
        let s = z(4, 2);
        let search = HomotopySearch::new(&s);
        let a = DiscreteLoop::new(&s, vec![0, 2, 0]).unwrap();
        let b = DiscreteLoop::new(&s, vec![0, 0, 0]).unwrap();
        let v = search.homotopic(&a, &b).unwrap();
        check_yes(&s, a.points(), b.points(), &v);
    }

    #[test]
    fn identical_loops() {
        let s = z(7, 2);
        let search = HomotopySearch::new(&s);
        let a = DiscreteLoop::new(&s, vec![0, 2, 4, 6, 1, 0]).unwrap();
        let v = search.homotopic(&a, &a).unwrap();
        check_yes(&s, a.points(), a.points(), &v);
    }

    #[test]
    fn winding_separates() {
        let s = z(7, 2);
        let search = HomotopySearch::new(&s);
        let a = DiscreteLoop::new(&s, vec![0, 2, 4, 6, 1, 3, 5, 0]).unwrap();
        let b = DiscreteLoop::constant(&s, 0).unwrap();
        assert_eq!(
            search.homotopic(&a, &b).unwrap(),
            Verdict::No { invariant: "winding", left: InvariantValue::Winding(2), right: InvariantValue::Winding(0) }
        );
    }

    #[test]
    fn same_winding_different_shape() {
        let s = z(7, 2);
        let search = HomotopySearch::new(&s);
        let a = [0, 1, 3, 4, 6, 0];
        let b = [0, 2, 4, 6, 0];
        let v = search.homotopic_points(&a, &b).unwrap();
        check_yes(&s, &a, &b, &v);
        let v = search.homotopic_points(&b, &a).unwrap();
        check_yes(&s, &b, &a, &v);
    }

    #[test]
    fn star_with_inverse_is_null() {
        let s = z(7, 2);
        let search = HomotopySearch::new(&s);
        let p = crate::homotopy::path::DiscretePath::new(&s, vec![0, 2, 4]).unwrap();
        let l = p.star(&p.reverse()).unwrap().into_loop().unwrap();
        assert_eq!(l.points(), &[0, 2, 4, 2, 0]);
        let c = DiscreteLoop::constant(&s, 0).unwrap();
        check_yes(&s, l.points(), &[0], &search.homotopic(&l, &c).unwrap());
    }

    #[test]
    fn mismatched_basepoints() {
        let s = z(7, 2);
        let search = HomotopySearch::new(&s);
        let a = DiscreteLoop::constant(&s, 0).unwrap();
        let b = DiscreteLoop::constant(&s, 1).unwrap();
        assert_eq!(search.homotopic(&a, &b), Err(Error::BasepointMismatch(0, 1)));
    }

    #[test]
    fn without_invariant_different_classes_are_unknown() {
        let s = z(7, 2);
        let search = HomotopySearch::with_invariant(&s, None).cap(10).budget(20_000);
        let v = search.homotopic_points(&[0, 2, 4, 6, 0], &[0]).unwrap();
        assert!(matches!(v, Verdict::Unknown { .. }), "{v:?}");
    }
}
