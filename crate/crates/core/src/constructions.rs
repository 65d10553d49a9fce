//! Subspaces, disjoint unions, products and quotients.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FiniteClosureSpace;

/// The subspace on `a`, with `c_A(B) = A ∩ c(B)`. Points keep their labels and
/// are reindexed in ascending order.
pub fn subspace(space: &FiniteClosureSpace, a: &PointSet) -> FiniteClosureSpace {
    let members = a.to_vec();
    let mut position = vec![usize::MAX; space.len()];
    for (i, &x) in members.iter().enumerate() {
        position[x] = i;
    }
    let k = members.len();
    let rows = members
        .iter()
        .map(|&x| {
            let mut row = PointSet::empty(k);
            for y in space.row(x).iter().filter(|&y| a.contains(y)) {
                row.insert(position[y]);
            }
            row
        })
        .collect();
    let labels = members.iter().map(|&x| space.label(x).to_string()).collect();
    FiniteClosureSpace::from_parts_unchecked(labels, rows)
}

/// Block-diagonal union. Labels become `"i:label"` for summand `i`.
pub fn disjoint_union(spaces: &[&FiniteClosureSpace]) -> FiniteClosureSpace {
    let total: usize = spaces.iter().map(|s| s.len()).sum();
    let mut labels = Vec::with_capacity(total);
    let mut rows = Vec::with_capacity(total);
    let mut offset = 0;
    for (i, s) in spaces.iter().enumerate() {
        for x in 0..s.len() {
            labels.push(format!("{i}:{}", s.label(x)));
            let mut row = PointSet::empty(total);
            for y in s.row(x).iter() {
                row.insert(offset + y);
            }
            rows.push(row);
        }
        offset += s.len();
    }
    FiniteClosureSpace::from_parts_unchecked(labels, rows)
}

/// Index of `(x, y)` in `product(a, b)`.
pub fn product_index(b_len: usize, x: usize, y: usize) -> usize {
    x * b_len + y
}

/// The product closure, `c((x, y)) = c(x) × c(y)`.
///
/// The minimal neighborhood of `(x, y)` under the subbase structure is
/// `N(x) × N(y)`, and `(u, v) ∈ c({(x, y)})` iff `(x, y) ∈ N(u) × N(v)`, i.e.
/// iff `u ∈ c(x)` and `v ∈ c(y)`. Points are ordered row-major and labelled
/// `"(a,b)"`.
pub fn product(a: &FiniteClosureSpace, b: &FiniteClosureSpace) -> FiniteClosureSpace {
    let (na, nb) = (a.len(), b.len());
    let total = na * nb;
    let mut labels = Vec::with_capacity(total);
    let mut rows = Vec::with_capacity(total);
    for x in 0..na {
        for y in 0..nb {
            labels.push(format!("({},{})", a.label(x), b.label(y)));
            let mut row = PointSet::empty(total);
            for u in a.row(x).iter() {
                for v in b.row(y).iter() {
                    row.insert(product_index(nb, u, v));
                }
            }
            rows.push(row);
        }
    }
    FiniteClosureSpace::from_parts_unchecked(labels, rows)
}

/// Iterated binary product, left-nested. The product of no factors is a point.
pub fn product_all(spaces: &[&FiniteClosureSpace]) -> FiniteClosureSpace {
    let mut acc = FiniteClosureSpace::discrete(vec!["()".to_string()]);
    for (i, s) in spaces.iter().enumerate() {
        acc = if i == 0 { (*s).clone() } else { product(&acc, s) };
    }
    acc
}

/// Projections of `product(a, b)` onto each factor, as value arrays.
pub fn projections(a_len: usize, b_len: usize) -> (Vec<usize>, Vec<usize>) {
    let first = (0..a_len * b_len).map(|i| i / b_len.max(1)).collect();
    let second = (0..a_len * b_len).map(|i| i % b_len.max(1)).collect();
    (first, second)
}

/// A surjection from the points of a space onto a set of labelled classes.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientMap {
    source: FiniteClosureSpace,
    classes: Vec<String>,
    assign: Vec<usize>,
}

impl QuotientMap {
    pub fn new(source: FiniteClosureSpace, classes: Vec<String>, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != source.len() {
            return Err(Error::MapLength { expected: source.len(), found: assign.len() });
        }
        let mut seen = HashSet::new();
        for c in &classes {
            if !seen.insert(c.as_str()) {
                return Err(Error::DuplicateLabel(c.clone()));
            }
        }
        let mut hit = vec![false; classes.len()];
        for &c in &assign {
            if c >= classes.len() {
                return Err(Error::IndexOutOfRange { index: c, len: classes.len() });
            }
            hit[c] = true;
        }
        if let Some(c) = hit.iter().position(|h| !h) {
            return Err(Error::NotSurjective(c));
        }
        Ok(QuotientMap { source, classes, assign })
    }

    pub fn source(&self) -> &FiniteClosureSpace {
        &self.source
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }
}

/// The quotient closure `c_f(V) = f(c(f⁻¹(V)))`, evaluated on singleton classes.
pub fn quotient(q: &QuotientMap) -> FiniteClosureSpace {
    let k = q.classes.len();
    let rows = (0..k)
        .map(|class| {
            let mut fiber = q.source.empty_set();
            for (x, &c) in q.assign.iter().enumerate() {
                if c == class {
                    fiber.insert(x);
                }
            }
            let mut row = PointSet::empty(k);
            for y in q.source.closure(&fiber).iter() {
                row.insert(q.assign[y]);
            }
            row
        })
        .collect();
    FiniteClosureSpace::from_parts_unchecked(q.classes.clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::cyclic::CyclicSpace;
    use crate::map::SpaceMap;
    use crate::space::fixtures::p4;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn subspace_examples() {
        let z = CyclicSpace::new(7, 2).unwrap().space();
        let a = z.set([0, 1, 2, 3]).unwrap();
        let sub = subspace(&z, &a);
        assert_eq!(sub.row(0).to_vec(), vec![0, 1, 2]);
        assert_eq!(subspace(&z, &z.whole()), z);

        let p = p4();
        let sub = subspace(&p, &p.set([1, 2]).unwrap());
        assert!(sub.is_discrete());
        assert_eq!(sub.labels(), &labels(&["2", "3"])[..]);
    }

    #[test]
    fn disjoint_union_examples() {
        let p = p4();
        let u = disjoint_union(&[&p, &p]);
        assert_eq!(u.len(), 8);
        assert_eq!(u.components().len(), 4);
        assert_eq!(u.row(4).to_vec(), vec![4, 5]);

        let single = disjoint_union(&[&p]);
        assert_eq!(single.closure_lists(), p.closure_lists());

        let z = CyclicSpace::new(7, 2).unwrap().space();
        assert_eq!(disjoint_union(&[&p, &z]).components().len(), p.components().len() + 1);
    }

    #[test]
    fn product_examples() {
        let s = FiniteClosureSpace::from_closures(labels(&["a", "b"]), &[vec![0, 1], vec![1]]).unwrap();
        let ss = product(&s, &s);
        assert_eq!(ss.row(0).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(ss.label(0), "(a,a)");

        let d = FiniteClosureSpace::discrete(labels(&["x", "y", "z"]));
        assert!(product(&d, &d).is_discrete());

        let p = p4();
        assert!(product(&p, &p).is_topological());
    }

    #[test]
    fn projections_are_continuous() {
        let s = FiniteClosureSpace::from_closures(labels(&["a", "b"]), &[vec![0, 1], vec![1]]).unwrap();
        let p = p4();
        let prod = product(&s, &p);
        let (first, second) = projections(s.len(), p.len());
        assert!(SpaceMap::new(&prod, &s, first).unwrap().is_continuous());
        assert!(SpaceMap::new(&prod, &p, second).unwrap().is_continuous());
    }

    #[test]
    fn quotient_of_p4_is_not_topological() {
        let q = QuotientMap::new(p4(), labels(&["x1", "x2", "x3"]), vec![0, 1, 1, 2]).unwrap();
        let c = quotient(&q);
        assert_eq!(c.closure_lists(), vec![vec![0, 1], vec![1, 2], vec![2]]);
        assert!(!c.is_topological());
        assert!(SpaceMap::new(q.source(), &c, q.assign().to_vec()).unwrap().is_continuous());
    }

    #[test]
    fn identity_quotient_is_isomorphic() {
        let p = p4();
        let q = QuotientMap::new(p.clone(), labels(&["a", "b", "c", "d"]), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(quotient(&q).closure_lists(), p.closure_lists());
    }

    #[test]
    fn quotient_needs_surjection() {
        assert_eq!(
            QuotientMap::new(p4(), labels(&["a", "b"]), vec![0, 0, 0, 0]),
            Err(Error::NotSurjective(1))
        );
        assert!(QuotientMap::new(p4(), labels(&["a"]), vec![0, 0, 0]).is_err());
    }
}
