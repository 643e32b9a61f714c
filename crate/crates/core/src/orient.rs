//! Directed skeletons: orienting polytope graphs by generic linear costs,
//! facial and Hasse-diagram checks, and the trace-based Hasse oracle.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{dot, Rat, RatVector};
use crate::polytope::{Face, Polytope, PolytopeError};
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientError {
    #[error("cost is not generic: vertices {u} and {v} have equal cost value")]
    NotGeneric { u: usize, v: usize },
    #[error("arc set does not match the polytope edge set")]
    ArcMismatch,
    #[error("orientation contains a directed cycle")]
    CyclicOrientation,
    #[error("skeleton is not a Hasse diagram: arc ({}, {}) has a longer bypass", witness.arc.0, witness.arc.1)]
    NotHasse { witness: BypassWitness },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// An arc together with a strictly longer directed path joining the same
/// endpoints; `bypass` runs from the arc tail to the arc head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BypassWitness {
    pub arc: (usize, usize),
    pub bypass: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseCheck {
    pub hasse: bool,
    pub witness: Option<BypassWitness>,
}

/// A face whose induced orientation fails to have a unique source and a
/// unique sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialWitness {
    pub face: Face,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialCheck {
    pub facial: bool,
    pub witness: Option<FacialWitness>,
}

/// Acyclic orientation of a polytope's graph. Arcs point toward increasing
/// cost when a cost vector is present.
#[derive(Clone, Debug)]
pub struct OrientedSkeleton<'p> {
    pub polytope: &'p Polytope,
    pub arcs: Vec<(usize, usize)>,
    pub cost: Option<RatVector>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl<'p> OrientedSkeleton<'p> {
    /// Orients every edge toward the larger cost value. The cost must be
    /// generic: no two vertices may share a cost value, adjacent or not.
    pub fn orient(polytope: &'p Polytope, cost: RatVector) -> Result<Self, OrientError> {
        let values: Vec<Rat> = polytope.vertices.iter().map(|v| dot(&cost, v)).collect();
        for u in 0..values.len() {
            for v in u + 1..values.len() {
                if values[u] == values[v] {
                    return Err(OrientError::NotGeneric { u, v });
                }
            }
        }
        let arcs = polytope
            .edges()
            .into_iter()
            .map(|(u, v)| if values[u] < values[v] { (u, v) } else { (v, u) })
            .collect();
        Ok(Self::assemble(polytope, arcs, Some(cost)))
    }

    /// Wraps an explicitly given acyclic orientation. The arcs must cover
    /// the polytope's edges exactly, once each.
    pub fn explicit(polytope: &'p Polytope, arcs: Vec<(usize, usize)>) -> Result<Self, OrientError> {
        let mut undirected: Vec<(usize, usize)> = arcs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        undirected.sort_unstable();
        let mut edges = polytope.edges();
        edges.sort_unstable();
        if undirected != edges {
            return Err(OrientError::ArcMismatch);
        }
        let skeleton = Self::assemble(polytope, arcs, None);
        if skeleton.topo_order().is_none() {
            return Err(OrientError::CyclicOrientation);
        }
        Ok(skeleton)
    }

    fn assemble(
        polytope: &'p Polytope,
        arcs: Vec<(usize, usize)>,
        cost: Option<RatVector>,
    ) -> Self {
        let n = polytope.vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
            inn[v].push(u);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        OrientedSkeleton {
            polytope,
            arcs,
            cost,
            out,
            inn,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Cost value of a vertex, when the orientation came from a cost.
    pub fn cost_of(&self, v: usize) -> Option<Rat> {
        self.cost
            .as_ref()
            .map(|c| dot(c, &self.polytope.vertices[v]))
    }

    /// The unique vertex without incoming arcs, if exactly one exists.
    pub fn source(&self) -> Option<usize> {
        let mut sources = (0..self.vertex_count()).filter(|&v| self.inn[v].is_empty());
        match (sources.next(), sources.next()) {
            (Some(s), None) => Some(s),
            _ => None,
        }
    }

    /// The unique vertex without outgoing arcs, if exactly one exists.
    pub fn sink(&self) -> Option<usize> {
        let mut sinks = (0..self.vertex_count()).filter(|&v| self.out[v].is_empty());
        match (sinks.next(), sinks.next()) {
            (Some(s), None) => Some(s),
            _ => None,
        }
    }

    /// Same skeleton with every arc flipped (and the cost negated).
    pub fn reverse(&self) -> OrientedSkeleton<'p> {
        Self::assemble(
            self.polytope,
            self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
            self.cost
                .as_ref()
                .map(|c| c.iter().map(|x| -x.clone()).collect()),
        )
    }

    /// Topological order of the vertices; None if the arcs contain a cycle.
    pub(crate) fn topo_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indegree: Vec<usize> = (0..n).map(|v| self.inn[v].len()).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            order.push(v);
            for &w in &self.out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Checks that every face induces a unique source and a unique sink.
    /// Requires face enumeration, hence a simple polytope.
    pub fn is_facial(&self) -> Result<FacialCheck, PolytopeError> {
        for face in self.polytope.all_faces()? {
            let inside = |v: usize| face.vertex_set.binary_search(&v).is_ok();
            let sources: Vec<usize> = face
                .vertex_set
                .iter()
                .copied()
                .filter(|&v| !self.inn[v].iter().any(|&u| inside(u)))
                .collect();
            let sinks: Vec<usize> = face
                .vertex_set
                .iter()
                .copied()
                .filter(|&v| !self.out[v].iter().any(|&w| inside(w)))
                .collect();
            if sources.len() != 1 || sinks.len() != 1 {
                return Ok(FacialCheck {
                    facial: false,
                    witness: Some(FacialWitness {
                        face,
                        sources,
                        sinks,
                    }),
                });
            }
        }
        Ok(FacialCheck {
            facial: true,
            witness: None,
        })
    }

    /// Checks that no arc is bypassed by a longer directed path between the
    /// same endpoints, i.e. the arcs form the cover relation of a poset.
    /// The witness bypass is a shortest one, found by breadth-first search.
    pub fn is_hasse(&self) -> HasseCheck {
        for &(u, v) in &self.arcs {
            // BFS from u that may not take the direct arc u -> v as its
            // first step; acyclicity rules out reusing it later.
            let n = self.vertex_count();
            let mut parent: Vec<Option<usize>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[u] = true;
            let mut frontier = std::collections::VecDeque::from([u]);
            while let Some(x) = frontier.pop_front() {
                for &y in &self.out[x] {
                    if x == u && y == v {
                        continue;
                    }
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some(x);
                        frontier.push_back(y);
                    }
                }
            }
            if seen[v] {
                let mut bypass = vec![v];
                let mut cur = v;
                while let Some(p) = parent[cur] {
                    bypass.push(p);
                    cur = p;
                }
                bypass.reverse();
                return HasseCheck {
                    hasse: false,
                    witness: Some(BypassWitness { arc: (u, v), bypass }),
                };
            }
        }
        HasseCheck {
            hasse: true,
            witness: None,
        }
    }

    /// Length (in arcs) of the longest directed path.
    pub(crate) fn longest_path_len(&self) -> usize {
        let order = self.topo_order().expect("skeleton is acyclic");
        let mut dist = vec![0usize; self.vertex_count()];
        for &v in order.iter().rev() {
            dist[v] = self.out[v]
                .iter()
                .map(|&w| dist[w] + 1)
                .max()
                .unwrap_or(0);
        }
        dist.into_iter().max().unwrap_or(0)
    }

    /// Algebraic Hasse oracle, independent of `is_hasse`: with adjacency
    /// matrix A, the arcs form a cover relation iff trace(A^T A^i) = 0 for
    /// every path length i from 2 up to the longest directed path. Counts
    /// are exact big integers, never truncated.
    pub fn billera_trace(&self) -> bool {
        let n = self.vertex_count();
        let longest = self.longest_path_len();
        let mut adjacency = vec![vec![BigUint::zero(); n]; n];
        for &(u, v) in &self.arcs {
            adjacency[u][v] += 1u32;
        }
        let mut power = adjacency.clone();
        for _ in 2..=longest {
            power = mat_mul(&power, &adjacency);
            // trace(A^T P) sums P over the arc positions.
            let coincidences: BigUint = self
                .arcs
                .iter()
                .map(|&(u, v)| power[u][v].clone())
                .sum();
            if !coincidences.is_zero() {
                return false;
            }
        }
        true
    }

    /// Interprets the arcs as the cover relation of a partial order.
    /// Fails with the bypass witness when the skeleton is not a Hasse
    /// diagram (the arcs would not be covers).
    pub fn build_poset(&self) -> Result<Poset, OrientError> {
        let check = self.is_hasse();
        if let Some(witness) = check.witness {
            return Err(OrientError::NotHasse { witness });
        }
        Ok(Poset::from_cover_arcs(self.vertex_count(), &self.arcs)
            .expect("acyclic arcs build a poset"))
    }
}

/// Strictly descending cost (B^(D-1), ..., B, 1) with base B one more than
/// the coordinate spread. Distinct vertices always get distinct cost values:
/// coordinatewise differences are bounded by B-1 in absolute value, so they
/// read as digits of a nonzero base-B number.
pub fn descending_generic_cost(p: &Polytope) -> RatVector {
    let d = p.vertices.first().map_or(0, Vec::len);
    let coords = p.vertices.iter().flatten();
    let lo = coords.clone().min().cloned().unwrap_or_default();
    let hi = coords.max().cloned().unwrap_or_default();
    let base = hi - lo + Rat::from_integer(1.into());
    let mut cost = vec![Rat::from_integer(1.into()); d];
    for i in (0..d.saturating_sub(1)).rev() {
        cost[i] = &cost[i + 1] * &base;
    }
    cost
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::fixtures;
    use proptest::prelude::*;

    fn ints(coords: &[i64]) -> RatVector {
        coords.iter().map(|&c| rat_int(c)).collect()
    }

    #[test]
    fn square_orients_from_corner_to_corner() {
        let p = fixtures::square();
        let o = OrientedSkeleton::orient(&p, ints(&[2, 1])).unwrap();
        assert_eq!(o.arcs, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(o.source(), Some(0));
        assert_eq!(o.sink(), Some(3));
        assert_eq!(o.cost_of(3), Some(rat_int(3)));
    }

    #[test]
    fn tied_cost_is_rejected_with_the_tied_pair() {
        let p = fixtures::square();
        assert_eq!(
            OrientedSkeleton::orient(&p, ints(&[1, 1])).unwrap_err(),
            OrientError::NotGeneric { u: 1, v: 2 }
        );
        // A tie between non-adjacent vertices is still rejected.
        assert_eq!(
            OrientedSkeleton::orient(&p, ints(&[1, 0])).unwrap_err(),
            OrientError::NotGeneric { u: 0, v: 2 }
        );
    }

    #[test]
    fn pentagon_descending_cost_is_facial_and_hasse() {
        let p = fixtures::pentagon();
        let o = OrientedSkeleton::orient(&p, ints(&[3, 2, 1])).unwrap();
        // Cost values 14,13,12,11,10: source is (1,2,3), sink is (3,2,1).
        assert_eq!(o.source(), Some(4));
        assert_eq!(o.sink(), Some(0));
        assert_eq!(o.arcs, vec![(1, 0), (2, 0), (3, 1), (4, 2), (4, 3)]);
        assert!(o.is_facial().unwrap().facial);
        assert!(o.is_hasse().hasse);
        assert!(o.billera_trace());
    }

    #[test]
    fn worst_case_square_has_a_bypassed_arc() {
        let p = fixtures::km2();
        let o = OrientedSkeleton::orient(&p, ints(&[0, 1])).unwrap();
        let check = o.is_hasse();
        assert!(!check.hasse);
        let witness = check.witness.unwrap();
        assert_eq!(witness.arc, (0, 3));
        assert_eq!(witness.bypass, vec![0, 1, 2, 3]);
        assert!(!o.billera_trace());
        // Facial still holds: every face has one source and one sink.
        assert!(o.is_facial().unwrap().facial);
        // But it cannot be read as a cover relation.
        assert!(matches!(
            o.build_poset(),
            Err(OrientError::NotHasse { .. })
        ));
    }

    #[test]
    fn two_source_orientation_fails_the_facial_check_but_is_hasse() {
        let p = fixtures::square();
        let o = OrientedSkeleton::explicit(&p, vec![(0, 1), (0, 2), (3, 1), (3, 2)]).unwrap();
        assert_eq!(o.source(), None);
        let check = o.is_facial().unwrap();
        assert!(!check.facial);
        let witness = check.witness.unwrap();
        assert_eq!(witness.sources, vec![0, 3]);
        assert_eq!(witness.sinks, vec![1, 2]);
        // No arc has a bypass, so the Hasse check and the oracle both pass.
        assert!(o.is_hasse().hasse);
        assert!(o.billera_trace());
    }

    #[test]
    fn explicit_orientation_must_cover_the_edges() {
        let p = fixtures::square();
        assert_eq!(
            OrientedSkeleton::explicit(&p, vec![(0, 1), (0, 2), (1, 3)]).unwrap_err(),
            OrientError::ArcMismatch
        );
        assert_eq!(
            OrientedSkeleton::explicit(&p, vec![(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap_err(),
            OrientError::CyclicOrientation
        );
    }

    #[test]
    fn reverse_swaps_source_and_sink() {
        let p = fixtures::pentagon();
        let o = OrientedSkeleton::orient(&p, ints(&[3, 2, 1])).unwrap();
        let r = o.reverse();
        assert_eq!(r.source(), Some(0));
        assert_eq!(r.sink(), Some(4));
        assert_eq!(r.cost_of(0), Some(rat_int(-14)));
        assert!(r.is_hasse().hasse);
    }

    #[test]
    fn pentagon_poset_is_the_rotation_lattice() {
        let p = fixtures::pentagon();
        let o = OrientedSkeleton::orient(&p, ints(&[3, 2, 1])).unwrap();
        let ps = o.build_poset().unwrap();
        assert_eq!(ps.min(), Some(4));
        assert_eq!(ps.max(), Some(0));
        assert!(ps.is_lattice().lattice);
        assert_eq!(ps.covers().len(), 5);
    }

    #[test]
    fn cube_with_powers_of_two_cost_is_the_subset_order() {
        let p = fixtures::cube3();
        let o = OrientedSkeleton::orient(&p, ints(&[1, 2, 4])).unwrap();
        assert_eq!(o.source(), Some(0));
        assert_eq!(o.sink(), Some(7));
        assert!(o.is_facial().unwrap().facial);
        assert!(o.is_hasse().hasse);
        let ps = o.build_poset().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(ps.le(i, j), i & j == i);
            }
        }
    }

    #[test]
    fn descending_cost_uses_the_coordinate_spread_as_base() {
        // Pentagon coordinates range over 1..=4, so the base is 4.
        assert_eq!(
            descending_generic_cost(&fixtures::pentagon()),
            ints(&[16, 4, 1])
        );
        assert_eq!(
            descending_generic_cost(&fixtures::hexagon_p3()),
            ints(&[9, 3, 1])
        );
    }

    #[test]
    fn descending_cost_is_generic_on_every_generated_family() {
        use crate::generators::*;
        let polys = vec![
            gen_permutahedron(3).unwrap(),
            gen_permutahedron(4).unwrap(),
            gen_associahedron(4).unwrap(),
            gen_associahedron(5).unwrap(),
            gen_cube(3).unwrap(),
            gen_klee_minty(3, &crate::exact::rat(1, 4)).unwrap(),
        ];
        for p in &polys {
            let cost = descending_generic_cost(p);
            assert!(
                cost.windows(2).all(|w| w[0] > w[1]),
                "{}: cost must strictly descend",
                p.name
            );
            assert!(
                OrientedSkeleton::orient(p, cost).is_ok(),
                "{}: cost must be generic",
                p.name
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn generic_orientations_agree_with_the_trace_oracle(
            a in -4i64..=4,
            b in -4i64..=4,
            c in -4i64..=4,
        ) {
            let p = fixtures::cube3();
            match OrientedSkeleton::orient(&p, ints(&[a, b, c])) {
                Err(OrientError::NotGeneric { u, v }) => {
                    // The reported pair really does tie.
                    let cost = ints(&[a, b, c]);
                    prop_assert_eq!(
                        dot(&cost, &p.vertices[u]),
                        dot(&cost, &p.vertices[v])
                    );
                }
                Ok(o) => {
                    prop_assert!(o.source().is_some());
                    prop_assert!(o.sink().is_some());
                    prop_assert_eq!(o.is_hasse().hasse, o.billera_trace());
                }
                Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
            }
        }
    }
}
