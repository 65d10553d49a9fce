//! Maps between finite closure spaces and their continuity.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

/// A total function between the points of two finite closure spaces.
#[derive(Clone, Debug)]
pub struct SpaceMap<'a> {
    domain: &'a FiniteClosureSpace,
    codomain: &'a FiniteClosureSpace,
    values: Vec<usize>,
}

impl<'a> SpaceMap<'a> {
    pub fn new(
        domain: &'a FiniteClosureSpace,
        codomain: &'a FiniteClosureSpace,
        values: Vec<usize>,
    ) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::MapLength { expected: domain.len(), found: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::IndexOutOfRange { index: v, len: codomain.len() });
        }
        Ok(SpaceMap { domain, codomain, values })
    }

    /// The identity of the underlying set, between two closures on the same labels.
    pub fn identity(domain: &'a FiniteClosureSpace, codomain: &'a FiniteClosureSpace) -> Result<Self> {
        if domain.labels() != codomain.labels() {
            return Err(Error::LabelMismatch);
        }
        Self::new(domain, codomain, (0..domain.len()).collect())
    }

    pub fn constant(domain: &'a FiniteClosureSpace, codomain: &'a FiniteClosureSpace, y: usize) -> Result<Self> {
        Self::new(domain, codomain, vec![y; domain.len()])
    }

    pub fn domain(&self) -> &'a FiniteClosureSpace {
        self.domain
    }

    pub fn codomain(&self) -> &'a FiniteClosureSpace {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn image(&self, a: &PointSet) -> PointSet {
        let mut out = self.codomain.empty_set();
        for x in a.iter() {
            out.insert(self.values[x]);
        }
        out
    }

    pub fn preimage(&self, b: &PointSet) -> PointSet {
        let mut out = self.domain.empty_set();
        for (x, &y) in self.values.iter().enumerate() {
            if b.contains(y) {
                out.insert(x);
            }
        }
        out
    }

    /// `g ∘ self`. The codomain of `self` must equal the domain of `g`.
    pub fn then(&self, g: &SpaceMap<'a>) -> Result<SpaceMap<'a>> {
        if self.codomain != g.domain {
            return Err(Error::SpaceMismatch);
        }
        let values = self.values.iter().map(|&y| g.values[y]).collect();
        SpaceMap::new(self.domain, g.codomain, values)
    }

    /// First point `x` with `f(c({x})) ⊄ c'({f(x)})`.
    ///
    /// Checking singletons is enough: if `f(c({x})) ⊆ c'(f(x))` for every `x`
    /// then by additivity `f(c(A)) = ⋃ f(c({x})) ⊆ ⋃ c'(f(x)) = c'(f(A))`.
    pub fn continuity_failure(&self) -> Option<usize> {
        (0..self.domain.len()).find(|&x| !self.image(self.domain.row(x)).is_subset(self.codomain.row(self.values[x])))
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity_failure().is_none()
    }

    /// Continuity through neighborhoods: for every `x`, the preimage of the
    /// minimal neighborhood of `f(x)` is a neighborhood of `x`.
    pub fn is_continuous_by_neighborhoods(&self) -> bool {
        (0..self.domain.len()).all(|x| {
            let v = self.codomain.minimal_neighborhood(self.values[x]);
            let u = self.preimage(&v);
            self.domain.is_neighborhood(&u, &PointSet::singleton(self.domain.len(), x))
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.image(&self.domain.whole()).len() == self.codomain.len()
    }

    /// A bijection is a homeomorphism iff `f(c({x})) = c'({f(x)})` for all `x`.
    pub fn is_homeomorphism(&self) -> bool {
        self.is_bijective()
            && (0..self.domain.len()).all(|x| &self.image(self.domain.row(x)) == self.codomain.row(self.values[x]))
    }
}
