//! Wedges of two cyclic spaces and the reduced-word invariant of their loops.
//!
//! A loop at the wedge point splits at each visit to it; between visits it
//! stays inside one circle, where it is a closed loop with a winding number.
//! Reading `a^w` or `b^w` per piece and freely reducing gives an element of
//! the free group on `a, b`.

use std::fmt;

use serde::Serialize;

use crate::constructions::{disjoint_union, quotient, QuotientMap};
use crate::error::{Error, Result};
use crate::generators::CyclicSpace;
use crate::homotopy::winding::winding;
use crate::space::FiniteClosureSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::A => "a",
            Generator::B => "b",
        })
    }
}

/// A freely reduced word: no zero exponents, no two adjacent equal letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Word(Vec<(Generator, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Generator, power: i64) -> Self {
        let mut w = Word::identity();
        w.push(g, power);
        w
    }

    pub fn from_powers<I: IntoIterator<Item = (Generator, i64)>>(powers: I) -> Self {
        let mut w = Word::identity();
        for (g, p) in powers {
            w.push(g, p);
        }
        w
    }

    fn push(&mut self, g: Generator, power: i64) {
        if power == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((last, p)) if *last == g => {
                *p += power;
                if *p == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, power)),
        }
    }

    pub fn powers(&self) -> &[(Generator, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &(g, p) in &other.0 {
            out.push(g, p);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, p)| (g, -p)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, p)| if p == 1 { g.to_string() } else { format!("{g}^{p}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Two cyclic spaces glued at their zeros.
///
/// Index 0 is the wedge point; indices `1..n_a` are points `1..n_a` of the
/// first circle, then indices `n_a..n_a + n_b − 1` are points `1..n_b` of
/// the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSpace {
    first: CyclicSpace,
    second: CyclicSpace,
    space: FiniteClosureSpace,
}

impl WedgeSpace {
    pub fn new(first: CyclicSpace, second: CyclicSpace) -> Result<Self> {
        let (a, b) = (first.space(), second.space());
        let union = disjoint_union(&[&a, &b]);
        let (na, nb) = (first.n, second.n);
        let mut classes = vec!["*".to_string()];
        classes.extend((1..na).map(|k| format!("a{k}")));
        classes.extend((1..nb).map(|k| format!("b{k}")));
        let assign = (0..na).chain(std::iter::once(0)).chain(na..na + nb - 1).collect();
        let q = QuotientMap::new(union, classes, assign)?;
        Ok(WedgeSpace { first, second, space: quotient(&q) })
    }

    pub fn space(&self) -> &FiniteClosureSpace {
        &self.space
    }

    pub fn circles(&self) -> (CyclicSpace, CyclicSpace) {
        (self.first, self.second)
    }

    pub fn wedge_point(&self) -> usize {
        0
    }

    /// Circle and circle coordinate of a wedge index. The wedge point is
    /// reported as coordinate 0 of the first circle.
    pub fn locate(&self, index: usize) -> (Generator, usize) {
        let na = self.first.n;
        if index < na {
            (Generator::A, index)
        } else {
            (Generator::B, index - na + 1)
        }
    }

    /// Wedge index of point `k` on the given circle.
    pub fn index(&self, g: Generator, k: usize) -> usize {
        match (g, k) {
            (_, 0) => 0,
            (Generator::A, k) => k,
            (Generator::B, k) => self.first.n + k - 1,
        }
    }

    /// Loop once around one circle in the positive direction.
    pub fn generator_loop(&self, g: Generator) -> Vec<usize> {
        let cycle = match g {
            Generator::A => self.first,
            Generator::B => self.second,
        };
        crate::homotopy::winding::canonical_loop(&cycle, 0, 1)
            .into_iter()
            .map(|k| self.index(g, k))
            .collect()
    }

    pub fn word(&self, points: &[usize]) -> Result<Word> {
        for c in [self.first, self.second] {
            if !c.in_covering_regime() {
                return Err(Error::WedgeRegime { n: c.n, m: c.m });
            }
        }
        let (&start, &end) = (points.first().ok_or(Error::EmptyPath)?, points.last().ok_or(Error::EmptyPath)?);
        if start != 0 || end != 0 {
            return Err(Error::NotALoop { start, end });
        }
        if let Some(step) = crate::homotopy::path::first_invalid_step(&self.space, points)? {
            return Err(Error::InvalidStep { step, from: points[step], to: points[step + 1] });
        }
        let mut word = Word::identity();
        let mut piece_start = 0;
        for i in 1..points.len() {
            if points[i] != 0 {
                continue;
            }
            let piece = &points[piece_start..=i];
            piece_start = i;
            if piece.len() <= 2 {
                continue;
            }
            let (g, _) = self.locate(piece[1]);
            let cycle = if g == Generator::A { self.first } else { self.second };
            let mut coords = Vec::with_capacity(piece.len());
            for &p in piece {
                let (h, k) = self.locate(p);
                if p != 0 && h != g {
                    return Err(Error::InvalidMove(format!("segment leaves circle {g} without the wedge point")));
                }
                coords.push(k);
            }
            word.push(g, winding(&cycle, &coords)?);
        }
        Ok(word)
    }
}
