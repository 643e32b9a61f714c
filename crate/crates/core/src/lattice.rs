//! Pseudo-join and pseudo-meet of cover sets via the smallest-face closure,
//! plus verifiers comparing them against true lattice joins and meets: the
//! agreement theorem, distinctness over interval atoms, and the boolean
//! sublattice law.

use thiserror::Error;

use crate::orient::OrientedSkeleton;
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeLawError {
    #[error("vertex {atom} is not a cover of vertex {vertex} in the skeleton")]
    NotCover { vertex: usize, atom: usize },
    #[error("the face spanned by vertex {vertex} and its chosen covers has no unique extremum")]
    AmbiguousExtremum { vertex: usize },
    #[error("the skeleton poset is not a lattice (witness pair {0:?})")]
    NotLattice((usize, usize)),
    #[error("poset has {poset} elements but the skeleton has {skeleton}")]
    SizeMismatch { poset: usize, skeleton: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Join,
    Meet,
}

/// One place where the face-based operator and the order-theoretic one
/// return different vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub vertex: usize,
    pub subset: Vec<usize>,
    pub pseudo: usize,
    pub lattice: usize,
    pub kind: OpKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub holds: bool,
    pub vertices_checked: usize,
    pub comparisons: usize,
    pub skipped_vertices: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Two distinct cover subsets whose pseudo-joins coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctnessCollision {
    pub interval: (usize, usize),
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctnessReport {
    pub holds: bool,
    pub intervals_checked: usize,
    pub skipped_intervals: usize,
    pub collisions: Vec<DistinctnessCollision>,
}

/// A pair of cover subsets where pseudo-join order and subset inclusion
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanViolation {
    pub interval: (usize, usize),
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub le: bool,
    pub subset: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanReport {
    pub holds: bool,
    pub intervals_checked: usize,
    pub skipped_intervals: usize,
    pub violations: Vec<BooleanViolation>,
}

/// Sink of the smallest face containing `vertex` and the given out-covers.
/// With no atoms the face is the vertex itself, so the result is `vertex`.
pub fn pseudo_join(
    o: &OrientedSkeleton,
    vertex: usize,
    atoms: &[usize],
) -> Result<usize, LatticeLawError> {
    extremum(o, vertex, atoms, OpKind::Join)
}

/// Source of the smallest face containing `vertex` and the given in-covers;
/// dual to `pseudo_join`.
pub fn pseudo_meet(
    o: &OrientedSkeleton,
    vertex: usize,
    atoms: &[usize],
) -> Result<usize, LatticeLawError> {
    extremum(o, vertex, atoms, OpKind::Meet)
}

fn extremum(
    o: &OrientedSkeleton,
    vertex: usize,
    atoms: &[usize],
    kind: OpKind,
) -> Result<usize, LatticeLawError> {
    for &a in atoms {
        let adjacent = match kind {
            OpKind::Join => o.out_neighbors(vertex).contains(&a),
            OpKind::Meet => o.in_neighbors(vertex).contains(&a),
        };
        if !adjacent {
            return Err(LatticeLawError::NotCover { vertex, atom: a });
        }
    }
    let mut span: Vec<usize> = atoms.to_vec();
    span.push(vertex);
    span.sort_unstable();
    span.dedup();
    let face = o.polytope.smallest_face(&span);
    let inside = |v: usize| face.vertex_set.binary_search(&v).is_ok();
    let extrema: Vec<usize> = face
        .vertex_set
        .iter()
        .copied()
        .filter(|&v| match kind {
            OpKind::Join => !o.out_neighbors(v).iter().any(|&w| inside(w)),
            OpKind::Meet => !o.in_neighbors(v).iter().any(|&w| inside(w)),
        })
        .collect();
    match extrema[..] {
        [only] => Ok(only),
        _ => Err(LatticeLawError::AmbiguousExtremum { vertex }),
    }
}

fn require_lattice(o: &OrientedSkeleton, ps: &Poset) -> Result<(), LatticeLawError> {
    if ps.len() != o.vertex_count() {
        return Err(LatticeLawError::SizeMismatch {
            poset: ps.len(),
            skeleton: o.vertex_count(),
        });
    }
    let check = ps.is_lattice();
    match check.witness {
        Some(pair) => Err(LatticeLawError::NotLattice(pair)),
        None => Ok(()),
    }
}

fn subset_of_atoms(atoms: &[usize], mask: usize) -> Vec<usize> {
    atoms
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

/// Compares the pseudo-join of every nonempty subset of each vertex's
/// up-covers against the lattice join, and dually for meets. Vertices with
/// more than `max_atoms` covers are skipped and counted.
pub fn verify_pseudo_join_theorem(
    o: &OrientedSkeleton,
    ps: &Poset,
    max_atoms: usize,
) -> Result<TheoremReport, LatticeLawError> {
    require_lattice(o, ps)?;
    let mut report = TheoremReport {
        holds: true,
        vertices_checked: 0,
        comparisons: 0,
        skipped_vertices: 0,
        disagreements: Vec::new(),
    };
    for u in 0..ps.len() {
        let ups = ps.up_covers(u);
        let downs = ps.down_covers(u);
        if ups.len() > max_atoms || downs.len() > max_atoms {
            report.skipped_vertices += 1;
            continue;
        }
        report.vertices_checked += 1;
        for mask in 1..1usize << ups.len() {
            let subset = subset_of_atoms(&ups, mask);
            let pseudo = pseudo_join(o, u, &subset)?;
            let lattice = ps.join(&subset).expect("verified lattice");
            report.comparisons += 1;
            if pseudo != lattice {
                report.disagreements.push(Disagreement {
                    vertex: u,
                    subset,
                    pseudo,
                    lattice,
                    kind: OpKind::Join,
                });
            }
        }
        for mask in 1..1usize << downs.len() {
            let subset = subset_of_atoms(&downs, mask);
            let pseudo = pseudo_meet(o, u, &subset)?;
            let lattice = ps.meet(&subset).expect("verified lattice");
            report.comparisons += 1;
            if pseudo != lattice {
                report.disagreements.push(Disagreement {
                    vertex: u,
                    subset,
                    pseudo,
                    lattice,
                    kind: OpKind::Meet,
                });
            }
        }
    }
    report.holds = report.disagreements.is_empty();
    Ok(report)
}

/// Up-covers of u that stay inside the interval [u, v].
fn interval_atoms(ps: &Poset, u: usize, v: usize) -> Vec<usize> {
    ps.up_covers(u)
        .into_iter()
        .filter(|&a| ps.le(a, v))
        .collect()
}

fn pseudo_joins_by_mask(
    o: &OrientedSkeleton,
    u: usize,
    atoms: &[usize],
) -> Result<Vec<usize>, LatticeLawError> {
    (0..1usize << atoms.len())
        .map(|mask| pseudo_join(o, u, &subset_of_atoms(atoms, mask)))
        .collect()
}

/// Checks that distinct subsets of interval atoms have distinct
/// pseudo-joins, for every comparable pair u <= v.
pub fn verify_distinct_pseudo_joins(
    o: &OrientedSkeleton,
    ps: &Poset,
    max_atoms: usize,
) -> Result<DistinctnessReport, LatticeLawError> {
    require_lattice(o, ps)?;
    let mut report = DistinctnessReport {
        holds: true,
        intervals_checked: 0,
        skipped_intervals: 0,
        collisions: Vec::new(),
    };
    for u in 0..ps.len() {
        for v in 0..ps.len() {
            if !ps.le(u, v) {
                continue;
            }
            let atoms = interval_atoms(ps, u, v);
            if atoms.len() > max_atoms {
                report.skipped_intervals += 1;
                continue;
            }
            report.intervals_checked += 1;
            let values = pseudo_joins_by_mask(o, u, &atoms)?;
            let mut seen: Vec<Option<usize>> = vec![None; ps.len()];
            for (mask, &value) in values.iter().enumerate() {
                match seen[value] {
                    None => seen[value] = Some(mask),
                    Some(prior) => report.collisions.push(DistinctnessCollision {
                        interval: (u, v),
                        first: subset_of_atoms(&atoms, prior),
                        second: subset_of_atoms(&atoms, mask),
                        value,
                    }),
                }
            }
        }
    }
    report.holds = report.collisions.is_empty();
    Ok(report)
}

/// Checks the boolean sublattice law on every interval [u, v]: for subsets
/// S, T of the interval atoms, pseudo-join(S) <= pseudo-join(T) in the
/// poset exactly when S is a subset of T.
pub fn verify_boolean_sublattice(
    o: &OrientedSkeleton,
    ps: &Poset,
    max_atoms: usize,
) -> Result<BooleanReport, LatticeLawError> {
    require_lattice(o, ps)?;
    let mut report = BooleanReport {
        holds: true,
        intervals_checked: 0,
        skipped_intervals: 0,
        violations: Vec::new(),
    };
    for u in 0..ps.len() {
        for v in 0..ps.len() {
            if !ps.le(u, v) {
                continue;
            }
            let atoms = interval_atoms(ps, u, v);
            if atoms.len() > max_atoms {
                report.skipped_intervals += 1;
                continue;
            }
            report.intervals_checked += 1;
            let values = pseudo_joins_by_mask(o, u, &atoms)?;
            for s in 0..values.len() {
                for t in 0..values.len() {
                    if s == t {
                        continue;
                    }
                    let le = ps.le(values[s], values[t]);
                    let subset = s & t == s;
                    if le != subset {
                        report.violations.push(BooleanViolation {
                            interval: (u, v),
                            first: subset_of_atoms(&atoms, s),
                            second: subset_of_atoms(&atoms, t),
                            le,
                            subset,
                        });
                    }
                }
            }
        }
    }
    report.holds = report.violations.is_empty();
    Ok(report)
}
