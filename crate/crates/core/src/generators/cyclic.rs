//! The cyclic spaces `(Z_n, c_{m,n})`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

/// `Z_n` where the closure of `k` is the arc `{k − m, .., k + m} mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicSpace {
    pub n: usize,
    pub m: usize,
}

impl CyclicSpace {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCycle);
        }
        Ok(CyclicSpace { n, m })
    }

    /// Every arc is the whole cycle once `2m + 1 >= n`.
    pub fn is_indiscrete(&self) -> bool {
        2 * self.m + 1 >= self.n
    }

    /// Each step has a unique signed representative in `[-m, m]`.
    pub fn has_signed_steps(&self) -> bool {
        2 * self.m < self.n
    }

    /// `3 <= 3m < n`: the range in which `Z -> Z_n` is a covering and the
    /// fundamental group is `Z`.
    pub fn in_covering_regime(&self) -> bool {
        self.m >= 1 && 3 * self.m < self.n
    }

    pub fn arc(&self, k: usize) -> PointSet {
        let n = self.n;
        if self.is_indiscrete() {
            return PointSet::full(n);
        }
        let mut row = PointSet::empty(n);
        for d in 0..=self.m {
            row.insert((k + d) % n);
            row.insert((k + n - d) % n);
        }
        row
    }

    pub fn space(&self) -> FiniteClosureSpace {
        let labels = (0..self.n).map(|k| k.to_string()).collect();
        let rows = (0..self.n).map(|k| self.arc(k)).collect();
        FiniteClosureSpace::from_parts_unchecked(labels, rows)
    }

    /// Signed representative of `to − from` in `[-⌊(n−1)/2⌋, ⌊n/2⌋]`.
    pub fn signed_step(&self, from: usize, to: usize) -> i64 {
        let n = self.n as i64;
        let d = (to as i64 - from as i64).rem_euclid(n);
        if 2 * d > n {
            d - n
        } else {
            d
        }
    }

    /// Recognises a space whose relation, by index, is a cyclic arc relation.
    /// Returns the smallest matching `m`.
    pub fn recognize(space: &FiniteClosureSpace) -> Option<CyclicSpace> {
        let n = space.len();
        if n == 0 {
            return None;
        }
        let width = space.row(0).len();
        let m = if width == n { n / 2 } else { width.checked_sub(1)? / 2 };
        let candidate = CyclicSpace::new(n, m).ok()?;
        (0..n).all(|k| space.row(k) == &candidate.arc(k)).then_some(candidate)
    }
}
