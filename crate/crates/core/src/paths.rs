//! Directed-path analysis: face nonrevisiting, longest paths, diameter
//! bounds, spindle detection, and pivot-rule walk simulation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::orient::OrientedSkeleton;
use crate::polytope::{Face, PolytopeError};

/// Which faces the nonrevisiting check inspects. Facet scope works on any
/// polytope; full face scope needs a simple one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    FacetsOnly,
    AllFaces,
}

/// A directed path that leaves a face and returns to it: `path` starts and
/// ends at face vertices with at least one outside vertex between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevisitWitness {
    pub face: Face,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonrevisitReport {
    pub scope: Scope,
    pub checked_faces: usize,
    pub violations: Vec<RevisitWitness>,
    pub hirsch_bound: usize,
    pub longest_path: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirschReport {
    pub bound: usize,
    pub longest_path: usize,
    pub diameter: usize,
    pub longest_ok: bool,
    pub diameter_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpindleReport {
    NotApplicable {
        reason: String,
    },
    Checked {
        apexes: (usize, usize),
        bound: usize,
        longest: usize,
        length_ok: bool,
        nonrevisiting_ok: bool,
        pass: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjectureReport {
    HypothesesFail {
        simple: bool,
        hasse: bool,
        lattice: Option<bool>,
    },
    Pass {
        checked_faces: usize,
    },
    PotentialCounterexample {
        violations: Vec<RevisitWitness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PivotRule {
    GreatestImprovement,
    LeastIndex,
    Random(u64),
    AdversarialLongest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTrace {
    pub rule: PivotRule,
    pub path: Vec<usize>,
    pub steps: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WalkError {
    #[error("greatest-improvement walks need a cost-derived orientation")]
    NeedsCost,
    #[error("walk start is required when the skeleton has no unique source")]
    NoStart,
    #[error("start vertex {0} out of range")]
    BadStart(usize),
}

/// Checks that no directed path leaves a face and later returns to it. One
/// witness is recorded per violating face, with a shortest return path.
pub fn check_nonrevisiting(
    o: &OrientedSkeleton,
    scope: Scope,
) -> Result<NonrevisitReport, PolytopeError> {
    let p = o.polytope;
    let faces: Vec<Face> = match scope {
        Scope::FacetsOnly => p
            .facets
            .iter()
            .map(|f| p.smallest_face(&f.incident_vertices))
            .collect(),
        Scope::AllFaces => p.all_faces()?,
    };
    let mut violations = Vec::new();
    let checked_faces = faces.len();
    for face in faces {
        if let Some(path) = revisit_path(o, &face) {
            violations.push(RevisitWitness { face, path });
        }
    }
    let (longest_path, _) = longest_directed_path(o);
    Ok(NonrevisitReport {
        scope,
        checked_faces,
        holds: violations.is_empty(),
        violations,
        hirsch_bound: p.facets.len().saturating_sub(p.dim),
        longest_path,
    })
}

/// Shortest exit-and-return path for one face, if any: an arc u -> w with u
/// inside and w outside, then a directed path from w back into the face.
fn revisit_path(o: &OrientedSkeleton, face: &Face) -> Option<Vec<usize>> {
    let inside = |v: usize| face.vertex_set.binary_search(&v).is_ok();
    for &u in &face.vertex_set {
        for &w in o.out_neighbors(u) {
            if inside(w) {
                continue;
            }
            let n = o.vertex_count();
            let mut parent: Vec<Option<usize>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[w] = true;
            let mut frontier = std::collections::VecDeque::from([w]);
            while let Some(x) = frontier.pop_front() {
                if inside(x) {
                    let mut path = vec![x];
                    let mut cur = x;
                    while let Some(prev) = parent[cur] {
                        path.push(prev);
                        cur = prev;
                    }
                    path.push(u);
                    path.reverse();
                    return Some(path);
                }
                for &y in o.out_neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some(x);
                        frontier.push_back(y);
                    }
                }
            }
        }
    }
    None
}

/// Longest directed path via dynamic programming over a topological order;
/// ties are broken toward the least vertex index.
pub fn longest_directed_path(o: &OrientedSkeleton) -> (usize, Vec<usize>) {
    let order = o.topo_order().expect("skeleton is acyclic");
    let n = o.vertex_count();
    let mut dist = vec![0usize; n];
    let mut choice: Vec<Option<usize>> = vec![None; n];
    for &v in order.iter().rev() {
        for &w in o.out_neighbors(v) {
            // Out-neighbors ascend, so strict improvement keeps least index.
            if dist[w] + 1 > dist[v] {
                dist[v] = dist[w] + 1;
                choice[v] = Some(w);
            }
        }
    }
    let Some(start) = (0..n).max_by_key(|&v| (dist[v], n - v)) else {
        return (0, Vec::new());
    };
    let mut path = vec![start];
    let mut cur = start;
    while let Some(next) = choice[cur] {
        path.push(next);
        cur = next;
    }
    (dist[start], path)
}

/// Compares the longest directed path and the undirected diameter against
/// the facet-minus-dimension bound.
pub fn hirsch_check(o: &OrientedSkeleton) -> HirschReport {
    let bound = o.polytope.facets.len().saturating_sub(o.polytope.dim);
    let (longest_path, _) = longest_directed_path(o);
    let diameter = undirected_diameter(o);
    HirschReport {
        bound,
        longest_path,
        diameter,
        longest_ok: longest_path <= bound,
        diameter_ok: diameter <= bound,
    }
}

fn undirected_diameter(o: &OrientedSkeleton) -> usize {
    let n = o.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &o.arcs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut diameter = 0;
    for start in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut frontier = std::collections::VecDeque::from([start]);
        while let Some(x) = frontier.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    frontier.push_back(y);
                }
            }
        }
        diameter = diameter.max(dist.iter().copied().filter(|&d| d != usize::MAX).max().unwrap_or(0));
    }
    diameter
}

/// First vertex pair (by index) such that every facet contains at least one
/// of the two.
pub fn is_spindle(p: &crate::polytope::Polytope) -> Option<(usize, usize)> {
    let n = p.vertices.len();
    for u in 0..n {
        for v in u + 1..n {
            let covered = p.facets.iter().all(|f| {
                f.incident_vertices.binary_search(&u).is_ok()
                    || f.incident_vertices.binary_search(&v).is_ok()
            });
            if covered {
                return Some((u, v));
            }
        }
    }
    None
}

/// For spindles whose apexes are the global source and sink of a Hasse
/// orientation: every directed path has at most facets-minus-dimension arcs
/// and no facet is revisited.
pub fn spindle_theorem_check(o: &OrientedSkeleton) -> SpindleReport {
    let p = o.polytope;
    if is_spindle(p).is_none() {
        return SpindleReport::NotApplicable {
            reason: "not a spindle: no vertex pair covers all facets".into(),
        };
    }
    if !o.is_hasse().hasse {
        return SpindleReport::NotApplicable {
            reason: "Hasse property fails".into(),
        };
    }
    let (Some(source), Some(sink)) = (o.source(), o.sink()) else {
        return SpindleReport::NotApplicable {
            reason: "no unique source and sink".into(),
        };
    };
    let covered = p.facets.iter().all(|f| {
        f.incident_vertices.binary_search(&source).is_ok()
            || f.incident_vertices.binary_search(&sink).is_ok()
    });
    if !covered {
        return SpindleReport::NotApplicable {
            reason: "source and sink are not the spindle apexes".into(),
        };
    }
    let bound = p.facets.len().saturating_sub(p.dim);
    let (longest, _) = longest_directed_path(o);
    let nonrevisiting_ok = check_nonrevisiting(o, Scope::FacetsOnly)
        .expect("facet scope never fails")
        .holds;
    let length_ok = longest <= bound;
    SpindleReport::Checked {
        apexes: (source, sink),
        bound,
        longest,
        length_ok,
        nonrevisiting_ok,
        pass: length_ok && nonrevisiting_ok,
    }
}

/// Evaluates the simple + Hasse + lattice hypothesis triple; when all hold,
/// runs the all-faces nonrevisiting check. A violation under satisfied
/// hypotheses is a potential counterexample, never silently dropped.
pub fn conjecture_check(o: &OrientedSkeleton) -> ConjectureReport {
    let simple = o.polytope.simple;
    let hasse = o.is_hasse().hasse;
    let lattice = if hasse {
        Some(
            o.build_poset()
                .expect("hasse checked")
                .is_lattice()
                .lattice,
        )
    } else {
        None
    };
    if !(simple && hasse && lattice == Some(true)) {
        return ConjectureReport::HypothesesFail {
            simple,
            hasse,
            lattice,
        };
    }
    let report = check_nonrevisiting(o, Scope::AllFaces).expect("simple was checked");
    if report.holds {
        ConjectureReport::Pass {
            checked_faces: report.checked_faces,
        }
    } else {
        ConjectureReport::PotentialCounterexample {
            violations: report.violations,
        }
    }
}

/// Walks from the source (or `start`) along out-arcs chosen by the pivot
/// rule until reaching a vertex with no outgoing arcs.
pub fn pivot_walk(
    o: &OrientedSkeleton,
    rule: PivotRule,
    start: Option<usize>,
) -> Result<WalkTrace, WalkError> {
    if rule == PivotRule::GreatestImprovement && o.cost.is_none() {
        return Err(WalkError::NeedsCost);
    }
    let begin = match start {
        Some(v) if v < o.vertex_count() => v,
        Some(v) => return Err(WalkError::BadStart(v)),
        None => o.source().ok_or(WalkError::NoStart)?,
    };
    let remaining = remaining_longest(o);
    let mut rng = match rule {
        PivotRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut path = vec![begin];
    let mut cur = begin;
    loop {
        let outs = o.out_neighbors(cur);
        if outs.is_empty() {
            break;
        }
        // Out-neighbor lists ascend, so first-found maxima break ties
        // toward the least index.
        cur = match rule {
            PivotRule::GreatestImprovement => outs
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    let ca = o.cost_of(a).expect("cost checked");
                    let cb = o.cost_of(b).expect("cost checked");
                    ca.cmp(&cb).then(b.cmp(&a))
                })
                .unwrap(),
            PivotRule::LeastIndex => outs[0],
            PivotRule::Random(_) => {
                let rng = rng.as_mut().unwrap();
                outs[rng.gen_range(0..outs.len())]
            }
            PivotRule::AdversarialLongest => outs
                .iter()
                .copied()
                .max_by(|&a, &b| remaining[a].cmp(&remaining[b]).then(b.cmp(&a)))
                .unwrap(),
        };
        path.push(cur);
    }
    Ok(WalkTrace {
        rule,
        steps: path.len() - 1,
        path,
    })
}

/// Longest remaining path length from each vertex.
fn remaining_longest(o: &OrientedSkeleton) -> Vec<usize> {
    let order = o.topo_order().expect("skeleton is acyclic");
    let mut dist = vec![0usize; o.vertex_count()];
    for &v in order.iter().rev() {
        dist[v] = o
            .out_neighbors(v)
            .iter()
            .map(|&w| dist[w] + 1)
            .max()
            .unwrap_or(0);
    }
    dist
}
