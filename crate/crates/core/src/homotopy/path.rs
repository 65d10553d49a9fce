//! Discrete paths: step functions from the unit interval.
//!
//! A step from `x` to `y` is allowed when `y ∈ c({x})` or `x ∈ c({y})`. A step
//! function `[0, t) ↦ x, [t, 1] ↦ y` is continuous exactly when `y ∈ c({x})`,
//! and the mirrored split `[0, t] ↦ x, (t, 1] ↦ y` exactly when
//! `x ∈ c({y})`, so both directions are admitted.

use crate::error::{Error, Result};
use crate::space::FiniteClosureSpace;

/// First invalid step of a point sequence, if any.
pub fn first_invalid_step(space: &FiniteClosureSpace, points: &[usize]) -> Result<Option<usize>> {
    if let Some(&p) = points.iter().find(|&&p| p >= space.len()) {
        return Err(Error::IndexOutOfRange { index: p, len: space.len() });
    }
    Ok(points.windows(2).position(|w| !space.is_step(w[0], w[1])))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscretePath<'a> {
    space: &'a FiniteClosureSpace,
    points: Vec<usize>,
}

impl<'a> DiscretePath<'a> {
    pub fn new(space: &'a FiniteClosureSpace, points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPath);
        }
        if let Some(step) = first_invalid_step(space, &points)? {
            return Err(Error::InvalidStep { step, from: points[step], to: points[step + 1] });
        }
        Ok(DiscretePath { space, points })
    }

    pub fn constant(space: &'a FiniteClosureSpace, x: usize) -> Result<Self> {
        Self::new(space, vec![x])
    }

    pub fn space(&self) -> &'a FiniteClosureSpace {
        self.space
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn start(&self) -> usize {
        self.points[0]
    }

    pub fn end(&self) -> usize {
        *self.points.last().expect("paths are non-empty")
    }

    /// Number of steps.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    /// Concatenation; the shared point appears once.
    pub fn star(&self, other: &DiscretePath<'a>) -> Result<DiscretePath<'a>> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch { end: self.end(), start: other.start() });
        }
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points[1..]);
        Ok(DiscretePath { space: self.space, points })
    }

    pub fn reverse(&self) -> DiscretePath<'a> {
        let mut points = self.points.clone();
        points.reverse();
        DiscretePath { space: self.space, points }
    }

    pub fn into_loop(self) -> Result<DiscreteLoop<'a>> {
        DiscreteLoop::try_from(self)
    }
}

/// A discrete path that returns to its basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteLoop<'a>(DiscretePath<'a>);

impl<'a> DiscreteLoop<'a> {
    pub fn new(space: &'a FiniteClosureSpace, points: Vec<usize>) -> Result<Self> {
        DiscretePath::new(space, points)?.into_loop()
    }

    pub fn constant(space: &'a FiniteClosureSpace, x: usize) -> Result<Self> {
        Self::new(space, vec![x])
    }

    pub fn basepoint(&self) -> usize {
        self.0.start()
    }

    pub fn path(&self) -> &DiscretePath<'a> {
        &self.0
    }

    pub fn points(&self) -> &[usize] {
        self.0.points()
    }

    pub fn space(&self) -> &'a FiniteClosureSpace {
        self.0.space()
    }

    pub fn star(&self, other: &DiscreteLoop<'a>) -> Result<DiscreteLoop<'a>> {
        Ok(DiscreteLoop(self.0.star(&other.0)?))
    }

    pub fn reverse(&self) -> DiscreteLoop<'a> {
        DiscreteLoop(self.0.reverse())
    }
}

impl<'a> TryFrom<DiscretePath<'a>> for DiscreteLoop<'a> {
    type Error = Error;

    fn try_from(path: DiscretePath<'a>) -> Result<Self> {
        if !path.is_closed() {
            return Err(Error::NotALoop { start: path.start(), end: path.end() });
        }
        Ok(DiscreteLoop(path))
    }
}
