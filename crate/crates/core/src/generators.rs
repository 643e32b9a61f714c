//! Generators for the polytope families used throughout the crate: cubes,
//! worst-case pivoting cubes, permutahedra, associahedra, simplices, and
//! zonotopes from explicit segment generators.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{dot, rat_int, Rat, RatVector};
use crate::linalg::RatMatrix;
use crate::lp::{strictly_feasible, Sign};
use crate::polytope::Polytope;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("dimension must be at least 1")]
    DimensionTooSmall,
    #[error("need at least {0} items for this family")]
    OrderTooSmall(usize),
    #[error("distortion must lie strictly between 0 and 1/2")]
    BadDistortion,
    #[error("zonotope needs at least one generator")]
    NoGenerators,
    #[error("zonotope generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("zonotope generator {0} has inconsistent length")]
    MixedGenerators(usize),
}

fn ints(coords: &[i64]) -> RatVector {
    coords.iter().map(|&c| rat_int(c)).collect()
}

fn finish(name: String, vertices: Vec<RatVector>, ineqs: Vec<(RatVector, Rat)>) -> Polytope {
    let p = Polytope::from_inequalities(name, vertices, ineqs).expect("generator output");
    debug_assert!(p.validate().is_empty(), "generated polytope is invalid");
    p
}

/// Cube [-1,1]^d. Vertex i has coordinate k equal to +1 when bit k of i is
/// set, so the skeleton mirrors the subset order on bitmasks.
pub fn gen_cube(d: usize) -> Result<Polytope, GenError> {
    if d == 0 {
        return Err(GenError::DimensionTooSmall);
    }
    let vertices = (0..1u64 << d)
        .map(|i| (0..d).map(|k| rat_int(if i >> k & 1 == 1 { 1 } else { -1 })).collect())
        .collect();
    let mut ineqs = Vec::new();
    for k in 0..d {
        for sign in [1i64, -1] {
            let mut n = vec![0i64; d];
            n[k] = sign;
            ineqs.push((ints(&n), rat_int(1)));
        }
    }
    Ok(finish(format!("cube_{d}"), vertices, ineqs))
}

/// Squashed cube on which steepest-coordinate pivoting visits every vertex:
/// coordinate i of a vertex is either eps times or one minus eps times the
/// previous coordinate. All 2^d vertices have distinct last coordinates.
pub fn gen_klee_minty(d: usize, eps: &Rat) -> Result<Polytope, GenError> {
    if d == 0 {
        return Err(GenError::DimensionTooSmall);
    }
    if !(eps > &Rat::zero() && eps < &rat(1, 2)) {
        return Err(GenError::BadDistortion);
    }
    let mut vertices: Vec<RatVector> = vec![vec![rat_int(0)], vec![rat_int(1)]];
    for _ in 2..=d {
        let mut next = Vec::with_capacity(vertices.len() * 2);
        for v in &vertices {
            let last = v.last().unwrap().clone();
            let mut low = v.clone();
            low.push(eps * &last);
            let mut high = v.clone();
            high.push(Rat::one() - eps * &last);
            next.push(low);
            next.push(high);
        }
        vertices = next;
    }
    debug_assert_eq!(
        vertices
            .iter()
            .map(|v| v.last().unwrap())
            .collect::<BTreeSet<_>>()
            .len(),
        vertices.len(),
        "last coordinates must be pairwise distinct"
    );
    let mut ineqs = Vec::new();
    let mut e = vec![Rat::zero(); d];
    e[0] = -Rat::one();
    ineqs.push((e.clone(), Rat::zero()));
    e[0] = Rat::one();
    ineqs.push((e, Rat::one()));
    for i in 1..d {
        let mut low = vec![Rat::zero(); d];
        low[i - 1] = eps.clone();
        low[i] = -Rat::one();
        ineqs.push((low, Rat::zero()));
        let mut high = vec![Rat::zero(); d];
        high[i - 1] = eps.clone();
        high[i] = Rat::one();
        ineqs.push((high, Rat::one()));
    }
    Ok(finish(format!("klee_minty_{d}"), vertices, ineqs))
}

fn rat(num: i64, den: i64) -> Rat {
    crate::exact::rat(num, den)
}

/// Convex hull of all permutations of (1, ..., n); one facet per nonempty
/// proper subset S of coordinates, sum over S at least 1 + ... + |S|.
pub fn gen_permutahedron(n: usize) -> Result<Polytope, GenError> {
    if n < 2 {
        return Err(GenError::OrderTooSmall(2));
    }
    let vertices: Vec<RatVector> = (1..=n as i64)
        .permutations(n)
        .map(|p| ints(&p))
        .collect();
    let mut ineqs = Vec::new();
    for mask in 1u64..(1 << n) - 1 {
        let size = mask.count_ones() as i64;
        let normal: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 0 }).collect();
        ineqs.push((ints(&normal), rat_int(-(size * (size + 1) / 2))));
    }
    Ok(finish(format!("permutahedron_{n}"), vertices, ineqs))
}

/// Loday realization of the associahedron on binary trees with n leaves:
/// coordinate i of a tree is (leaves left of node i) * (leaves right of
/// node i), and facets are the proper leaf intervals.
pub fn gen_associahedron(n: usize) -> Result<Polytope, GenError> {
    if n < 3 {
        return Err(GenError::OrderTooSmall(3));
    }
    let mut vertices = Vec::new();
    for assignment in binary_trees(1, n) {
        let mut v = vec![0i64; n - 1];
        for (pos, value) in assignment {
            v[pos - 1] = value;
        }
        vertices.push(ints(&v));
    }
    let mut ineqs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if (i, j) == (1, n) {
                continue;
            }
            let mut normal = vec![0i64; n - 1];
            for slot in normal.iter_mut().take(j - 1).skip(i - 1) {
                *slot = -1;
            }
            let len = (j - i + 1) as i64;
            ineqs.push((ints(&normal), rat_int(-(len * (len - 1) / 2))));
        }
    }
    Ok(finish(format!("associahedron_{n}"), vertices, ineqs))
}

/// All binary trees over leaves lo..=hi, each reported as the list of
/// (internal node position, left leaves * right leaves) pairs; internal
/// node k sits between leaves k and k+1.
fn binary_trees(lo: usize, hi: usize) -> Vec<Vec<(usize, i64)>> {
    if lo == hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in lo..hi {
        for left in binary_trees(lo, k) {
            for right in binary_trees(k + 1, hi) {
                let mut tree = left.clone();
                tree.extend(right.iter().copied());
                tree.push((k, ((k - lo + 1) * (hi - k)) as i64));
                out.push(tree);
            }
        }
    }
    out
}

/// Simplex conv{0, e_1, ..., e_d}.
pub fn gen_simplex(d: usize) -> Result<Polytope, GenError> {
    if d == 0 {
        return Err(GenError::DimensionTooSmall);
    }
    let mut vertices = vec![vec![Rat::zero(); d]];
    for k in 0..d {
        let mut v = vec![0i64; d];
        v[k] = 1;
        vertices.push(ints(&v));
    }
    let mut ineqs = Vec::new();
    for k in 0..d {
        let mut n = vec![0i64; d];
        n[k] = -1;
        ineqs.push((ints(&n), rat_int(0)));
    }
    ineqs.push((ints(&vec![1i64; d]), rat_int(1)));
    Ok(finish(format!("simplex_{d}"), vertices, ineqs))
}

/// Minkowski sum of the segments [0, g_i]. Vertices are enumerated as the
/// chambers of the generator hyperplane arrangement (one exact feasibility
/// check per sign vector); facet normals are the primitive directions
/// orthogonal to rank-deficient generator subsets, with support offsets
/// summed per generator. Works in the affine hull when the generators do
/// not span the ambient space.
pub fn gen_zonotope(name: impl Into<String>, generators: &[RatVector]) -> Result<Polytope, GenError> {
    if generators.is_empty() {
        return Err(GenError::NoGenerators);
    }
    let d = generators[0].len();
    for (i, g) in generators.iter().enumerate() {
        if g.len() != d {
            return Err(GenError::MixedGenerators(i));
        }
        if g.iter().all(Zero::is_zero) {
            return Err(GenError::ZeroGenerator(i));
        }
    }
    let m = generators.len();

    // Stage 1: vertices. A sign vector is a chamber iff some cost is
    // strictly on the chosen side of every generator.
    let mut points = BTreeSet::new();
    for mask in 0..1u64 << m {
        let constraints: Vec<(RatVector, Sign)> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let side = if mask >> i & 1 == 1 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                (g.clone(), side)
            })
            .collect();
        if strictly_feasible(&constraints).is_some() {
            let mut v = vec![Rat::zero(); d];
            for (i, g) in generators.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (slot, x) in v.iter_mut().zip(g) {
                        *slot = &*slot + x;
                    }
                }
            }
            points.insert(v);
        }
    }
    let vertices: Vec<RatVector> = points.into_iter().collect();

    // Stage 2: facet directions. Pick a generator basis of the span, then
    // for each (rank-1)-subset solve for the in-span direction orthogonal
    // to it; one-dimensional solution spaces give the facet normals.
    let mut basis: Vec<RatVector> = Vec::new();
    for g in generators {
        let mut candidate = basis.clone();
        candidate.push(g.clone());
        if RatMatrix::new(candidate.clone()).rank() == candidate.len() {
            basis = candidate;
        }
    }
    let r = basis.len();
    let mut directions = BTreeSet::new();
    for subset in (0..m).combinations(r.saturating_sub(1)) {
        let mut rows: Vec<RatVector> = subset
            .iter()
            .map(|&i| basis.iter().map(|b| dot(&generators[i], b)).collect())
            .collect();
        // A zero row keeps the kernel intact and pins the column count.
        rows.push(vec![Rat::zero(); r]);
        let kernel = RatMatrix::new(rows).nullspace();
        let [t] = &kernel[..] else { continue };
        let mut normal = vec![Rat::zero(); d];
        for (tk, b) in t.iter().zip(&basis) {
            for (slot, bj) in normal.iter_mut().zip(b) {
                *slot = &*slot + &(tk * bj);
            }
        }
        directions.insert(primitive(&normal));
    }
    let mut ineqs = Vec::new();
    for dir in &directions {
        for flip in [false, true] {
            let n: RatVector = if flip {
                dir.iter().map(|x| -x.clone()).collect()
            } else {
                dir.clone()
            };
            let offset: Rat = generators
                .iter()
                .map(|g| {
                    let v = dot(&n, g);
                    if v > Rat::zero() { v } else { Rat::zero() }
                })
                .sum();
            ineqs.push((n, offset));
        }
    }
    Ok(finish(name.into(), vertices, ineqs))
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
fn primitive(v: &[Rat]) -> RatVector {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !gcd.is_zero() {
        for x in &mut ints {
            *x = &*x / &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
    }
    ints.into_iter().map(Rat::from_integer).collect()
}
