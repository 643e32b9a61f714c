//! Order complexes of open poset intervals, Mobius functions, reduced Euler
//! characteristics, and rational Betti profiles. The Mobius recursion and
//! the chain-complex Euler characteristic are computed independently so they
//! can cross-check each other on every interval.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::rank_int;
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("element {0} is not below element {1}")]
    NotBelow(usize, usize),
}

/// A simplicial complex given by its maximal faces; every subset of a
/// maximal face is a face. Vertices are poset element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertex_ids: Vec<usize>,
    pub maximal_faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from candidate faces: sorts each, drops duplicates
    /// and faces contained in another.
    pub fn from_maximal(faces: Vec<Vec<usize>>) -> Self {
        let mut sorted: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        sorted.sort();
        sorted.dedup();
        let contained = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        let maximal_faces: Vec<Vec<usize>> = sorted
            .iter()
            .filter(|f| {
                !sorted
                    .iter()
                    .any(|g| g.len() > f.len() && contained(f, g))
            })
            .cloned()
            .collect();
        let vertex_ids: Vec<usize> = maximal_faces
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        SimplicialComplex {
            vertex_ids,
            maximal_faces,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_faces.is_empty()
    }

    /// Dimension of the complex, or none when it has no faces.
    pub fn dim(&self) -> Option<usize> {
        self.maximal_faces.iter().map(|f| f.len() - 1).max()
    }

    /// All faces grouped by dimension, each group sorted: `[k]` holds the
    /// k-dimensional faces.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(dim) = self.dim() else {
            return Vec::new();
        };
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for face in &self.maximal_faces {
            // Downward closure: every nonempty subset of a maximal face.
            for mask in 1u64..(1 << face.len()) {
                let sub: Vec<usize> = face
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                by_dim[sub.len() - 1].insert(sub);
            }
        }
        by_dim
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }
}

/// Reduced rational Betti numbers; `minus_one` is 1 exactly for the empty
/// complex (the reduced homology convention).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiProfile {
    pub minus_one: usize,
    pub reduced_betti: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereClass {
    BallCompatible,
    Sphere(i64),
    Violation,
}

/// Complex of all chains in the open interval (u, v); empty when v covers u.
pub fn order_complex(ps: &Poset, u: usize, v: usize) -> Result<SimplicialComplex, TopologyError> {
    if !ps.lt(u, v) {
        return Err(TopologyError::NotBelow(u, v));
    }
    let elements = ps.open_interval(u, v);
    // Cover relation of the induced subposet: no interval element strictly
    // between.
    let succ: Vec<Vec<usize>> = elements
        .iter()
        .map(|&x| {
            elements
                .iter()
                .copied()
                .filter(|&y| {
                    ps.lt(x, y) && !elements.iter().any(|&z| ps.lt(x, z) && ps.lt(z, y))
                })
                .collect()
        })
        .collect();
    let index = |x: usize| elements.binary_search(&x).unwrap();
    let minimal: Vec<usize> = elements
        .iter()
        .copied()
        .filter(|&y| !elements.iter().any(|&x| ps.lt(x, y)))
        .collect();
    // Every maximal chain is a maximal path in the interval-cover relation.
    let mut chains = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = minimal.into_iter().map(|x| (vec![x], x)).collect();
    while let Some((chain, last)) = stack.pop() {
        let nexts = &succ[index(last)];
        if nexts.is_empty() {
            chains.push(chain);
            continue;
        }
        for &y in nexts {
            let mut longer = chain.clone();
            longer.push(y);
            stack.push((longer, y));
        }
    }
    Ok(SimplicialComplex::from_maximal(chains))
}

/// Mobius value by the recursion mu(u,u) = 1, mu(u,v) = -sum of mu(u,z)
/// over u <= z < v, memoized along the interval.
pub fn mobius(ps: &Poset, u: usize, v: usize) -> Result<i64, TopologyError> {
    if !ps.le(u, v) {
        return Err(TopologyError::NotBelow(u, v));
    }
    let mut memo = vec![None; ps.len()];
    Ok(mobius_memo(ps, u, v, &mut memo))
}

fn mobius_memo(ps: &Poset, u: usize, v: usize, memo: &mut Vec<Option<i64>>) -> i64 {
    if let Some(known) = memo[v] {
        return known;
    }
    let value = if u == v {
        1
    } else {
        -ps.interval(u, v)
            .into_iter()
            .filter(|&z| z != v)
            .map(|z| mobius_memo(ps, u, z, memo))
            .sum::<i64>()
    };
    memo[v] = Some(value);
    value
}

/// Alternating face-count sum -1 + f0 - f1 + ...; the empty complex gives -1.
pub fn reduced_euler(c: &SimplicialComplex) -> i64 {
    let mut chi: i64 = -1;
    for (k, faces) in c.faces_by_dim().iter().enumerate() {
        let count = faces.len() as i64;
        chi += if k % 2 == 0 { count } else { -count };
    }
    chi
}

/// Reduced Betti numbers over the rationals from boundary-matrix ranks.
pub fn betti_numbers(c: &SimplicialComplex) -> BettiProfile {
    let by_dim = c.faces_by_dim();
    if by_dim.is_empty() {
        return BettiProfile {
            minus_one: 1,
            reduced_betti: Vec::new(),
        };
    }
    let dim = by_dim.len() - 1;
    // ranks[k] = rank of the boundary map from k-faces down to (k-1)-faces;
    // the reduced degree-0 map (augmentation) has rank 1.
    let mut ranks = vec![0usize; dim + 2];
    ranks[0] = 1;
    for k in 1..=dim {
        ranks[k] = boundary_rank(&by_dim[k], &by_dim[k - 1]);
    }
    let reduced_betti = (0..=dim)
        .map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    BettiProfile {
        minus_one: 0,
        reduced_betti,
    }
}

fn boundary_rank(upper: &[Vec<usize>], lower: &[Vec<usize>]) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let mut rows = vec![vec![BigInt::from(0); upper.len()]; lower.len()];
    for (col, face) in upper.iter().enumerate() {
        for drop in 0..face.len() {
            let sub: Vec<usize> = face
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &x)| x)
                .collect();
            let row = lower.binary_search(&sub).expect("closed under subsets");
            rows[row][col] = BigInt::from(if drop % 2 == 0 { 1 } else { -1 });
        }
    }
    rank_int(rows)
}

/// Classifies a Betti profile: all zero (ball-compatible), exactly one 1
/// (sphere of that dimension, -1 for the empty complex), anything else is a
/// violation.
pub fn ball_or_sphere_profile(b: &BettiProfile) -> SphereClass {
    let mut sphere_dims: Vec<i64> = Vec::new();
    match b.minus_one {
        0 => {}
        1 => sphere_dims.push(-1),
        _ => return SphereClass::Violation,
    }
    for (k, &value) in b.reduced_betti.iter().enumerate() {
        match value {
            0 => {}
            1 => sphere_dims.push(k as i64),
            _ => return SphereClass::Violation,
        }
    }
    match sphere_dims.as_slice() {
        [] => SphereClass::BallCompatible,
        [k] => SphereClass::Sphere(*k),
        _ => SphereClass::Violation,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyViolation {
    MobiusOutOfRange {
        pair: (usize, usize),
        mu: i64,
    },
    HallMismatch {
        pair: (usize, usize),
        mu: i64,
        euler: i64,
    },
    ProfileViolation {
        pair: (usize, usize),
        betti: BettiProfile,
    },
    SphereSignMismatch {
        pair: (usize, usize),
        k: i64,
        mu: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologySurvey {
    pub pairs_checked: usize,
    pub complexes_checked: usize,
    pub skipped_intervals: usize,
    pub mobius_in_range: bool,
    pub hall_ok: bool,
    pub profiles_ok: bool,
    pub sphere_signs_ok: bool,
    pub violations: Vec<TopologyViolation>,
}

impl TopologySurvey {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sweeps every strictly ordered pair: Mobius values always; order complex,
/// Euler cross-check, and Betti classification only for open intervals with
/// at most `max_interval` elements.
pub fn survey_intervals(ps: &Poset, max_interval: usize) -> TopologySurvey {
    let n = ps.len();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    let mut complexes_checked = 0;
    let mut skipped_intervals = 0;
    for u in 0..n {
        let mut memo = vec![None; n];
        for v in 0..n {
            if u == v || !ps.le(u, v) {
                continue;
            }
            pairs_checked += 1;
            let mu = mobius_memo(ps, u, v, &mut memo);
            if !(-1..=1).contains(&mu) {
                violations.push(TopologyViolation::MobiusOutOfRange { pair: (u, v), mu });
            }
            if ps.open_interval(u, v).len() > max_interval {
                skipped_intervals += 1;
                continue;
            }
            complexes_checked += 1;
            let complex = order_complex(ps, u, v).expect("pair is strictly ordered");
            let euler = reduced_euler(&complex);
            if euler != mu {
                violations.push(TopologyViolation::HallMismatch {
                    pair: (u, v),
                    mu,
                    euler,
                });
            }
            let betti = betti_numbers(&complex);
            match ball_or_sphere_profile(&betti) {
                SphereClass::BallCompatible => {}
                SphereClass::Sphere(k) => {
                    let expected = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                    if mu != expected {
                        violations.push(TopologyViolation::SphereSignMismatch {
                            pair: (u, v),
                            k,
                            mu,
                        });
                    }
                }
                SphereClass::Violation => {
                    violations.push(TopologyViolation::ProfileViolation {
                        pair: (u, v),
                        betti,
                    });
                }
            }
        }
    }
    let absent = |pred: fn(&TopologyViolation) -> bool| !violations.iter().any(pred);
    TopologySurvey {
        pairs_checked,
        complexes_checked,
        skipped_intervals,
        mobius_in_range: absent(|v| matches!(v, TopologyViolation::MobiusOutOfRange { .. })),
        hall_ok: absent(|v| matches!(v, TopologyViolation::HallMismatch { .. })),
        profiles_ok: absent(|v| matches!(v, TopologyViolation::ProfileViolation { .. })),
        sphere_signs_ok: absent(|v| matches!(v, TopologyViolation::SphereSignMismatch { .. })),
        violations,
    }
}
