//! Covering maps between finite closure spaces and discrete path lifting.
//!
//! Local triviality is checked over minimal neighbourhoods only. Every
//! neighbourhood of `b` contains `N(b)`, and a trivialisation over `V ⊇ N(b)`
//! restricts to one over `N(b)`: the sheets intersected with `p⁻¹(N(b))` stay
//! clopen in the smaller subspace and each still maps homeomorphically onto
//! `N(b)`. Conversely `{N(b)}` is itself an interior cover. So a map is a
//! covering iff it trivialises over every `N(b)`.
//!
//! Over `U = N(b)` the sheets must be unions of components of `p⁻¹(U)`, since
//! they are clopen. Each component holding no point of the fibre is tried in
//! every sheet (backtracking); a candidate sheet passes when `p` restricted
//! to it is a bijection onto `U` with `p(c_S(x)) = c_U(p(x))` for each `x`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::constructions::subspace;
use crate::error::{Error, Result};
use crate::generators::CyclicSpace;
use crate::homotopy::path::DiscretePath;
use crate::map::SpaceMap;
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

/// Largest total space accepted by [`CoveringCandidate::lift_uniqueness_check`].
pub const MAX_LIFT_ENUMERATION: usize = 4096;

/// Sheets over one base point, each a sorted list of total-space indices.
/// `sheets[i]` contains the `i`-th point of the fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trivialization {
    pub base: usize,
    pub neighborhood: Vec<usize>,
    pub fiber: Vec<usize>,
    pub sheets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CoveringFailure {
    /// Two fibre points over `base` are one step apart.
    FiberNotDiscrete { base: usize, pair: (usize, usize) },
    /// No sheet decomposition exists over `N(base)`.
    NoTrivialization { base: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoveringVerdict {
    Covering(Vec<Trivialization>),
    NotCovering(CoveringFailure),
}

impl CoveringVerdict {
    pub fn is_covering(&self) -> bool {
        matches!(self, CoveringVerdict::Covering(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftCount {
    Unique(Vec<usize>),
    /// At least two lifts; two of them are given.
    Multiple(Vec<usize>, Vec<usize>),
    None,
}

impl LiftCount {
    pub fn label(&self) -> &'static str {
        match self {
            LiftCount::Unique(_) => "unique",
            LiftCount::Multiple(..) => "multiple",
            LiftCount::None => "none",
        }
    }
}

/// A continuous surjection `p: E → B` to be tested for the covering property.
#[derive(Debug)]
pub struct CoveringCandidate {
    total: FiniteClosureSpace,
    base: FiniteClosureSpace,
    proj: Vec<usize>,
    verdict: OnceLock<CoveringVerdict>,
}

impl CoveringCandidate {
    pub fn new(total: FiniteClosureSpace, base: FiniteClosureSpace, proj: Vec<usize>) -> Result<Self> {
        let p = SpaceMap::new(&total, &base, proj.clone())?;
        let image = p.image(&total.whole());
        if let Some(b) = base.whole().difference(&image).first() {
            return Err(Error::NotSurjective(b));
        }
        if let Some(x) = p.continuity_failure() {
            return Err(Error::NotACovering(format!("projection is not continuous at {}", total.label(x))));
        }
        Ok(CoveringCandidate { total, base, proj, verdict: OnceLock::new() })
    }

    /// `(Z_{kn}, c_m) → (Z_n, c_m)`, reduction mod `n`.
    pub fn cyclic(n: usize, m: usize, k: usize) -> Result<Self> {
        let total = CyclicSpace::new(k * n, m)?.space();
        let base = CyclicSpace::new(n, m)?.space();
        Self::new(total, base, (0..k * n).map(|i| i % n).collect())
    }

    pub fn total(&self) -> &FiniteClosureSpace {
        &self.total
    }

    pub fn base(&self) -> &FiniteClosureSpace {
        &self.base
    }

    pub fn projection(&self) -> &[usize] {
        &self.proj
    }

    pub fn fiber(&self, b: usize) -> PointSet {
        let mut out = PointSet::empty(self.total.len());
        for (x, &px) in self.proj.iter().enumerate() {
            if px == b {
                out.insert(x);
            }
        }
        out
    }

    fn preimage(&self, set: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.total.len());
        for (x, &px) in self.proj.iter().enumerate() {
            if set.contains(px) {
                out.insert(x);
            }
        }
        out
    }

    /// Two fibre points over `b` related by the closure, if any.
    fn fiber_link(&self, b: usize) -> Option<(usize, usize)> {
        let f = self.fiber(b);
        let link = f.iter().find_map(|x| {
            let mut r = self.total.row(x).intersection(&f);
            r.remove(x);
            r.first().map(|y| (x.min(y), x.max(y)))
        });
        link
    }

    /// Whether the subspace closure on `p⁻¹(b)` is the identity relation.
    pub fn fiber_discrete(&self, b: usize) -> Result<bool> {
        if b >= self.base.len() {
            return Err(Error::IndexOutOfRange { index: b, len: self.base.len() });
        }
        Ok(self.fiber_link(b).is_none())
    }

    pub fn is_covering(&self) -> bool {
        self.verdict().is_covering()
    }

    /// Cached covering verdict with its witness.
    pub fn verdict(&self) -> &CoveringVerdict {
        self.verdict.get_or_init(|| self.compute_verdict())
    }

    fn compute_verdict(&self) -> CoveringVerdict {
        let mut out = Vec::with_capacity(self.base.len());
        for b in 0..self.base.len() {
            if let Some(pair) = self.fiber_link(b) {
                return CoveringVerdict::NotCovering(CoveringFailure::FiberNotDiscrete { base: b, pair });
            }
            match self.trivialize(b) {
                Some(t) => out.push(t),
                None => return CoveringVerdict::NotCovering(CoveringFailure::NoTrivialization { base: b }),
            }
        }
        CoveringVerdict::Covering(out)
    }

    fn trivialize(&self, b: usize) -> Option<Trivialization> {
        let u = self.base.minimal_neighborhood(b);
        let eu = self.preimage(&u);
        let fiber = self.fiber(b).to_vec();
        let local_indices = eu.to_vec();
        let local = subspace(&self.total, &eu);
        let comps: Vec<Vec<usize>> = local
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| local_indices[i]).collect())
            .collect();

        let mut sheets: Vec<PointSet> = vec![PointSet::empty(self.total.len()); fiber.len()];
        let mut loose = Vec::new();
        for comp in &comps {
            let hits: Vec<usize> = (0..fiber.len()).filter(|&i| comp.contains(&fiber[i])).collect();
            match hits.as_slice() {
                [] => loose.push(comp),
                [i] => comp.iter().for_each(|&x| sheets[*i].insert(x)),
                _ => return None,
            }
        }
        if !self.assign(&u, &mut sheets, &loose) {
            return None;
        }
        Some(Trivialization {
            base: b,
            neighborhood: u.to_vec(),
            fiber,
            sheets: sheets.iter().map(PointSet::to_vec).collect(),
        })
    }

    /// Backtracking placement of fibre-free components into sheets.
    fn assign(&self, u: &PointSet, sheets: &mut [PointSet], loose: &[&Vec<usize>]) -> bool {
        let Some((comp, rest)) = loose.split_first() else {
            return sheets.iter().all(|s| self.is_sheet(s, u));
        };
        for i in 0..sheets.len() {
            let image = self.image(&sheets[i]);
            // Sheets are injective over U, so overlapping images are hopeless.
            if comp.iter().any(|&x| image.contains(self.proj[x])) {
                continue;
            }
            let saved = sheets[i].clone();
            comp.iter().for_each(|&x| sheets[i].insert(x));
            if self.assign(u, sheets, rest) {
                return true;
            }
            sheets[i] = saved;
        }
        false
    }

    fn image(&self, s: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.base.len());
        for x in s.iter() {
            out.insert(self.proj[x]);
        }
        out
    }

    /// `p|S : S → U` is a bijection preserving singleton closures.
    fn is_sheet(&self, s: &PointSet, u: &PointSet) -> bool {
        if s.len() != u.len() || &self.image(s) != u {
            return false;
        }
        s.iter().all(|x| {
            let row = self.total.row(x).intersection(s);
            self.image(&row) == self.base.row(self.proj[x]).intersection(u)
        })
    }

    /// Candidate next points of a lift currently at `e` whose base path steps to `b`.
    fn lift_candidates(&self, e: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        let nb = self.total.step_neighbors(e);
        self.fiber(b).intersection(&nb).to_vec().into_iter()
    }

    /// The unique lift of `base_path` starting at `start`, built step by step.
    /// Fails with [`Error::NonUniqueLift`] or [`Error::NoLift`] at the first
    /// step where the choice is ambiguous or impossible, and with
    /// [`Error::NotACovering`] when every step was forced but `p` is not a
    /// covering.
    pub fn lift_path<'e>(&'e self, base_path: &DiscretePath<'_>, start: usize) -> Result<DiscretePath<'e>> {
        if base_path.space() != &self.base {
            return Err(Error::SpaceMismatch);
        }
        if start >= self.total.len() {
            return Err(Error::IndexOutOfRange { index: start, len: self.total.len() });
        }
        if self.proj[start] != base_path.start() {
            return Err(Error::StartNotOverBase { start, base: base_path.start() });
        }
        let mut points = vec![start];
        for (i, &b) in base_path.points().iter().enumerate().skip(1) {
            let cur = *points.last().expect("non-empty");
            let mut cands = self.lift_candidates(cur, b);
            let next = cands.next().ok_or(Error::NoLift(i))?;
            if cands.next().is_some() {
                return Err(Error::NonUniqueLift(i));
            }
            points.push(next);
        }
        if let CoveringVerdict::NotCovering(f) = self.verdict() {
            return Err(Error::NotACovering(format!("{f:?}")));
        }
        DiscretePath::new(&self.total, points)
    }

    /// Counts every lift of `base_path` from `start`, reporting one or two
    /// witnesses. Refuses total spaces above [`MAX_LIFT_ENUMERATION`] points.
    pub fn lift_uniqueness_check(&self, base_path: &[usize], start: usize) -> Result<LiftCount> {
        let n = self.total.len();
        if n > MAX_LIFT_ENUMERATION {
            return Err(Error::TooLarge(n));
        }
        let (&b0, _) = base_path.split_first().ok_or(Error::EmptyPath)?;
        if let Some(step) = crate::homotopy::path::first_invalid_step(&self.base, base_path)? {
            return Err(Error::InvalidStep { step, from: base_path[step], to: base_path[step + 1] });
        }
        if start >= n {
            return Err(Error::IndexOutOfRange { index: start, len: n });
        }
        if self.proj[start] != b0 {
            return Err(Error::StartNotOverBase { start, base: b0 });
        }
        // ways[i][e]: number of lifts of base_path[i..] starting at e, capped at 2.
        let len = base_path.len();
        let mut ways = vec![vec![0u8; n]; len];
        for e in self.fiber(base_path[len - 1]).iter() {
            ways[len - 1][e] = 1;
        }
        for i in (0..len - 1).rev() {
            for e in self.fiber(base_path[i]).iter() {
                let total: u32 = self.lift_candidates(e, base_path[i + 1]).map(|x| ways[i + 1][x] as u32).sum();
                ways[i][e] = total.min(2) as u8;
            }
        }
        // Greedy walk through counted lifts; with `branch`, take the second
        // option at the first point where two options remain.
        let walk = |branch: bool| {
            let mut pts = vec![start];
            let mut branched = !branch;
            for i in 1..len {
                let options: Vec<usize> = self.lift_candidates(pts[i - 1], base_path[i]).filter(|&x| ways[i][x] > 0).collect();
                let pick = if !branched && options.len() > 1 {
                    branched = true;
                    options[1]
                } else {
                    options[0]
                };
                pts.push(pick);
            }
            pts
        };
        Ok(match ways[0][start] {
            0 => LiftCount::None,
            1 => LiftCount::Unique(walk(false)),
            _ => LiftCount::Multiple(walk(false), walk(true)),
        })
    }
}
