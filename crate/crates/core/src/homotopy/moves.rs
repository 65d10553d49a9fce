//! Elementary moves on point sequences with fixed endpoints.
//!
//! * M1: insert or delete an immediate repetition.
//! * M2: replace an interior point `x_i` by `x'` when `x_{i−1} ~ x'`,
//!   `x' ~ x_{i+1}` and `x_i ~ x'` are all steps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::FiniteClosureSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Duplicate `x_index`, so the sequence gains `x_index` at `index + 1`.
    InsertRepeat { index: usize },
    /// Drop `x_{index+1}`, which must equal `x_index`.
    DeleteRepeat { index: usize },
    /// Replace interior point `x_index = from` by `to`.
    Substitute { index: usize, from: usize, to: usize },
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::InsertRepeat { index } => Move::DeleteRepeat { index },
            Move::DeleteRepeat { index } => Move::InsertRepeat { index },
            Move::Substitute { index, from, to } => Move::Substitute { index, from: to, to: from },
        }
    }

    pub fn apply(self, space: &FiniteClosureSpace, points: &mut Vec<usize>) -> Result<()> {
        match self {
            Move::InsertRepeat { index } => {
                let x = *points
                    .get(index)
                    .ok_or_else(|| Error::InvalidMove(format!("insert at {index} past end")))?;
                points.insert(index + 1, x);
            }
            Move::DeleteRepeat { index } => {
                if index + 1 >= points.len() || points[index] != points[index + 1] {
                    return Err(Error::InvalidMove(format!("no repetition at {index}")));
                }
                points.remove(index + 1);
            }
            Move::Substitute { index, from, to } => {
                if index == 0 || index + 1 >= points.len() {
                    return Err(Error::InvalidMove(format!("{index} is not an interior position")));
                }
                if points[index] != from {
                    return Err(Error::InvalidMove(format!("position {index} holds {}, not {from}", points[index])));
                }
                if to >= space.len() || !substitution_allowed(space, points, index, to) {
                    return Err(Error::InvalidMove(format!("cannot replace {from} by {to} at {index}")));
                }
                points[index] = to;
            }
        }
        Ok(())
    }
}

/// Whether `x_index` may be replaced by `to`.
pub fn substitution_allowed(space: &FiniteClosureSpace, points: &[usize], index: usize, to: usize) -> bool {
    space.is_step(points[index - 1], to) && space.is_step(to, points[index + 1]) && space.is_step(points[index], to)
}

pub fn apply_trace(space: &FiniteClosureSpace, points: &[usize], trace: &[Move]) -> Result<Vec<usize>> {
    let mut out = points.to_vec();
    for mv in trace {
        mv.apply(space, &mut out)?;
    }
    Ok(out)
}

pub fn invert_trace(trace: &[Move]) -> Vec<Move> {
    trace.iter().rev().map(|m| m.inverse()).collect()
}

/// Every move applicable to `points`. Insertions are listed only while the
/// sequence is shorter than `max_len`.
pub fn applicable_moves(space: &FiniteClosureSpace, points: &[usize], max_len: usize) -> Vec<Move> {
    let mut out = Vec::new();
    let len = points.len();
    if len < max_len {
        out.extend((0..len).map(|index| Move::InsertRepeat { index }));
    }
    out.extend((0..len.saturating_sub(1)).filter(|&i| points[i] == points[i + 1]).map(|index| Move::DeleteRepeat { index }));
    for index in 1..len.saturating_sub(1) {
        let from = points[index];
        for to in space.step_neighbors(from).iter() {
            if to != from && substitution_allowed(space, points, index, to) {
                out.push(Move::Substitute { index, from, to });
            }
        }
    }
    out
}

/// Removes immediate repetitions, recording the deletions.
pub(crate) fn collapse_repeats(points: &mut Vec<usize>, trace: &mut Vec<Move>) {
    let mut i = 0;
    while i + 1 < points.len() {
        if points[i] == points[i + 1] {
            points.remove(i + 1);
            trace.push(Move::DeleteRepeat { index: i });
        } else {
            i += 1;
        }
    }
}

/// Greedy shortening: drop repetitions, then repeatedly cut out an interior
/// point whose neighbors are themselves one step apart (an M2 onto the
/// previous point followed by an M1 deletion). Returns the reduced sequence
/// and the moves leading to it.
pub fn reduce(space: &FiniteClosureSpace, points: &[usize]) -> (Vec<usize>, Vec<Move>) {
    let mut pts = points.to_vec();
    let mut trace = Vec::new();
    collapse_repeats(&mut pts, &mut trace);
    let mut i = 1;
    while i + 1 < pts.len() {
        let (prev, cur, next) = (pts[i - 1], pts[i], pts[i + 1]);
        if space.is_step(prev, next) {
            trace.push(Move::Substitute { index: i, from: cur, to: prev });
            pts[i] = prev;
            pts.remove(i);
            trace.push(Move::DeleteRepeat { index: i - 1 });
            if pts[i - 1] == pts.get(i).copied().unwrap_or(usize::MAX) {
                pts.remove(i);
                trace.push(Move::DeleteRepeat { index: i - 1 });
            }
            i = i.saturating_sub(1).max(1);
        } else {
            i += 1;
        }
    }
    (pts, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::CyclicSpace;

    #[test]
    fn moves_invert() {
        let z = CyclicSpace::new(7, 2).unwrap().space();
        let start = vec![0, 2, 4, 2, 0];
        for mv in applicable_moves(&z, &start, 8) {
            let after = apply_trace(&z, &start, &[mv]).unwrap();
            assert_eq!(apply_trace(&z, &after, &[mv.inverse()]).unwrap(), start, "{mv:?}");
        }
    }

    #[test]
    fn endpoints_cannot_be_substituted() {
        let z = CyclicSpace::new(7, 2).unwrap().space();
        let mut pts = vec![0, 1, 0];
        assert!(Move::Substitute { index: 0, from: 0, to: 1 }.apply(&z, &mut pts).is_err());
        assert!(Move::Substitute { index: 2, from: 0, to: 1 }.apply(&z, &mut pts).is_err());
    }

    #[test]
    fn invalid_substitution_rejected() {
        let z = CyclicSpace::new(7, 2).unwrap().space();
        let mut pts = vec![0, 2, 4];
        // 2 → 3 keeps 0 ~ 3? no: d(0,3) = 3 > 2
        assert!(Move::Substitute { index: 1, from: 2, to: 3 }.apply(&z, &mut pts).is_err());
        assert!(Move::DeleteRepeat { index: 0 }.apply(&z, &mut pts).is_err());
    }

    #[test]
    fn reduce_backtrack_to_constant() {
        let z = CyclicSpace::new(7, 2).unwrap().space();
        let start = [0, 2, 4, 2, 0];
        let (r, trace) = reduce(&z, &start);
        assert_eq!(r, vec![0]);
        assert_eq!(apply_trace(&z, &start, &trace).unwrap(), r);
    }

    #[test]
    fn reduce_keeps_nontrivial_loop() {
        let z = CyclicSpace::new(7, 2).unwrap().space();
        let start = [0, 2, 4, 6, 1, 3, 5, 0];
        let (r, trace) = reduce(&z, &start);
        assert_eq!(r, start.to_vec());
        assert!(trace.is_empty());
    }
}
