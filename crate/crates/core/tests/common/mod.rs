//! Independent reference implementations used by the integration tests.
//! Spaces are `u64` bitmask rows, so nothing here goes through `PointSet`.

#![allow(dead_code)]

use cech::generators::{FiniteMetricSpace, DEFAULT_TOL};
use cech::FiniteClosureSpace;
use rand::Rng;

/// Closure of a subset, by additivity over its points.
pub fn closure(rows: &[u64], a: u64) -> u64 {
    let mut out = 0;
    for (x, &row) in rows.iter().enumerate() {
        if a >> x & 1 == 1 {
            out |= row;
        }
    }
    out
}

pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn interior(rows: &[u64], a: u64) -> u64 {
    let n = rows.len();
    !closure(rows, full(n) & !a) & full(n)
}

/// Intersection of every set of the form `X − {a}` that is a neighbourhood of `x`.
pub fn min_neighborhood(rows: &[u64], x: usize) -> u64 {
    let n = rows.len();
    let mut out = full(n);
    for a in 0..n {
        let u = full(n) & !(1 << a);
        if interior(rows, u) >> x & 1 == 1 {
            out &= u;
        }
    }
    out
}

pub fn rows_of(space: &FiniteClosureSpace) -> Vec<u64> {
    (0..space.len()).map(|x| space.row(x).iter().fold(0u64, |m, y| m | 1 << y)).collect()
}

pub fn mask_of(set: &cech::PointSet) -> u64 {
    set.iter().fold(0, |m, y| m | 1 << y)
}

pub fn space_of(rows: &[u64]) -> FiniteClosureSpace {
    let lists: Vec<Vec<usize>> = rows.iter().map(|&r| (0..rows.len()).filter(|&y| r >> y & 1 == 1).collect()).collect();
    FiniteClosureSpace::with_index_labels(&lists).unwrap()
}

/// Random reflexive relation; the density is itself random per space.
pub fn random_rows<R: Rng>(rng: &mut R, n: usize) -> Vec<u64> {
    let p: f64 = rng.gen_range(0.0..0.6);
    (0..n)
        .map(|x| {
            let mut row = 1u64 << x;
            for y in 0..n {
                if rng.gen_bool(p) {
                    row |= 1 << y;
                }
            }
            row
        })
        .collect()
}

/// Transitive closure (Warshall) of the relation `y ∈ row[x]`.
pub fn transitive(rows: &[u64]) -> Vec<u64> {
    let mut r = rows.to_vec();
    let n = r.len();
    for k in 0..n {
        for x in 0..n {
            if r[x] >> k & 1 == 1 {
                r[x] |= r[k];
            }
        }
    }
    r
}

pub fn random_topological<R: Rng>(rng: &mut R, n: usize) -> Vec<u64> {
    transitive(&random_rows(rng, n))
}

pub fn is_topological(rows: &[u64]) -> bool {
    (0..rows.len()).all(|x| closure(rows, rows[x]) == rows[x])
}

/// Components of the symmetrised relation by flood fill.
pub fn components(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let sym: Vec<u64> = (0..n)
        .map(|x| rows[x] | (0..n).filter(|&y| rows[y] >> x & 1 == 1).fold(0, |m, y| m | 1 << y))
        .collect();
    let mut seen = 0u64;
    let mut out = Vec::new();
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << s;
        loop {
            let grown = (0..n).filter(|&x| comp >> x & 1 == 1).fold(comp, |m, x| m | sym[x]);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

/// Components of `d <= r + tol` by breadth-first search on the distance
/// matrix, as sorted index lists.
pub fn metric_components(ms: &FiniteMetricSpace, r: f64) -> Vec<Vec<usize>> {
    let n = ms.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut members = vec![s];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if comp[y] == usize::MAX && ms.distance(x, y) <= r + DEFAULT_TOL {
                    comp[y] = id;
                    stack.push(y);
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Distinct pairwise distances, collapsing runs within the tolerance.
pub fn critical_radii(ms: &FiniteMetricSpace) -> Vec<f64> {
    let n = ms.len();
    let mut d: Vec<f64> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| ms.distance(i, j)).collect();
    d.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for x in d {
        if out.last().is_none_or(|&l| x > l + DEFAULT_TOL) {
            out.push(x);
        }
    }
    out
}

/// Random cloud; with `grid`, integer coordinates so that ties are common.
pub fn random_cloud<R: Rng>(rng: &mut R, n: usize, dim: usize, grid: bool) -> FiniteMetricSpace {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| if grid { rng.gen_range(0..12) as f64 } else { rng.gen_range(0.0..10.0) })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteMetricSpace::from_points(labels, &pts, cech::Metric::Euclidean).unwrap()
}

/// Random metric from shortest paths over random positive weights.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize) -> FiniteMetricSpace {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..i {
            let w = rng.gen_range(1..8) as f64 / 2.0;
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    FiniteMetricSpace::from_matrix((0..n).map(|i| i.to_string()).collect(), &d).unwrap()
}

/// Breadth-first shortest step path from `a` to `b`.
pub fn shortest_path(space: &FiniteClosureSpace, a: usize, b: usize) -> Vec<usize> {
    let n = space.len();
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for y in 0..n {
            if prev[y] == usize::MAX && space.is_step(x, y) {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut out = vec![b];
    while *out.last().unwrap() != a {
        out.push(prev[*out.last().unwrap()]);
    }
    out.reverse();
    out
}

/// Random walk of `steps` steps from `base`, closed up by a shortest path.
pub fn random_loop<R: Rng>(rng: &mut R, space: &FiniteClosureSpace, base: usize, steps: usize) -> Vec<usize> {
    let mut pts = vec![base];
    for _ in 0..steps {
        let nb = space.step_neighbors(*pts.last().unwrap()).to_vec();
        pts.push(nb[rng.gen_range(0..nb.len())]);
    }
    let back = shortest_path(space, *pts.last().unwrap(), base);
    pts.extend_from_slice(&back[1..]);
    pts
}

pub fn random_walk<R: Rng>(rng: &mut R, space: &FiniteClosureSpace, start: usize, steps: usize) -> Vec<usize> {
    let mut pts = vec![start];
    for _ in 0..steps {
        let nb = space.step_neighbors(*pts.last().unwrap()).to_vec();
        pts.push(nb[rng.gen_range(0..nb.len())]);
    }
    pts
}
