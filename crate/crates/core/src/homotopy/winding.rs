//! Winding numbers of loops in `(Z_n, c_{m,n})`.
//!
//! Lifting a loop through `Z → Z_n` turns each step into its signed
//! representative in `[-m, m]`; the lift ends `n · w` above its start, and
//! `w` is the winding number. For `3 <= 3m < n` this realises `π₁ ≅ Z`.

use crate::error::{Error, Result};
use crate::generators::CyclicSpace;

/// Total signed displacement of a path in `Z_n`. Requires `2m < n` so each
/// step has a unique representative.
pub fn displacement(cycle: &CyclicSpace, points: &[usize]) -> Result<i64> {
    if !cycle.has_signed_steps() {
        return Err(Error::WindingUndefined { n: cycle.n, m: cycle.m });
    }
    let mut total = 0;
    for (step, w) in points.windows(2).enumerate() {
        if w[0] >= cycle.n || w[1] >= cycle.n {
            return Err(Error::IndexOutOfRange { index: w[0].max(w[1]), len: cycle.n });
        }
        let d = cycle.signed_step(w[0], w[1]);
        if d.unsigned_abs() as usize > cycle.m {
            return Err(Error::InvalidStep { step, from: w[0], to: w[1] });
        }
        total += d;
    }
    Ok(total)
}

pub fn winding(cycle: &CyclicSpace, points: &[usize]) -> Result<i64> {
    if let (Some(&s), Some(&e)) = (points.first(), points.last()) {
        if s != e {
            return Err(Error::NotALoop { start: s, end: e });
        }
    }
    let d = displacement(cycle, points)?;
    debug_assert_eq!(d.rem_euclid(cycle.n as i64), 0);
    Ok(d / cycle.n as i64)
}

/// A loop at `base` winding `w` times, taking steps of `m` (the last one shorter).
pub fn canonical_loop(cycle: &CyclicSpace, base: usize, w: i64) -> Vec<usize> {
    let n = cycle.n as i64;
    let m = cycle.m.max(1) as i64;
    let target = w * n;
    let mut pos = 0i64;
    let mut out = vec![base];
    while pos != target {
        let step = (target - pos).clamp(-m, m);
        pos += step;
        out.push((base as i64 + pos).rem_euclid(n) as usize);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z72() -> CyclicSpace {
        CyclicSpace::new(7, 2).unwrap()
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding(&z72(), &[0, 2, 4, 6, 1, 3, 5, 0]), Ok(2));
        assert_eq!(winding(&z72(), &[0]), Ok(0));
        assert_eq!(winding(&z72(), &[0, 2, 4, 6, 1, 0]), Ok(1));
        assert_eq!(winding(&z72(), &[0, 5, 3, 1, 0]), Ok(-1));
    }

    #[test]
    fn undefined_when_arcs_overlap() {
        let c = CyclicSpace::new(4, 2).unwrap();
        assert_eq!(winding(&c, &[0, 2, 0]), Err(Error::WindingUndefined { n: 4, m: 2 }));
    }

    #[test]
    fn invalid_steps_rejected() {
        assert!(matches!(winding(&z72(), &[0, 3, 0]), Err(Error::InvalidStep { .. })));
        assert!(matches!(winding(&z72(), &[0, 2]), Err(Error::NotALoop { .. })));
    }

    #[test]
    fn canonical_loops_have_their_winding() {
        let c = z72();
        for w in -3..=3 {
            let l = canonical_loop(&c, 3, w);
            assert_eq!(winding(&c, &l), Ok(w));
        }
        assert_eq!(canonical_loop(&c, 0, 1), vec![0, 2, 4, 6, 0]);
    }
}
