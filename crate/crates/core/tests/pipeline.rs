//! Cross-module flows: generators feed orientations, orientations feed
//! posets, and the law/path/topology checkers must agree with each other on
//! every generated family.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polyskel::exact::{rat, rat_int};
use polyskel::generators::{
    gen_associahedron, gen_cube, gen_klee_minty, gen_permutahedron, gen_simplex, gen_zonotope,
};
use polyskel::lattice::{
    verify_boolean_sublattice, verify_distinct_pseudo_joins, verify_pseudo_join_theorem,
};
use polyskel::orient::descending_generic_cost;
use polyskel::paths::{
    check_nonrevisiting, conjecture_check, longest_directed_path, pivot_walk,
    spindle_theorem_check, ConjectureReport, PivotRule, Scope, SpindleReport,
};
use polyskel::topology::survey_intervals;
use polyskel::{OrientedSkeleton, Polytope, RatVector};

fn ints(coords: &[i64]) -> RatVector {
    coords.iter().map(|&c| rat_int(c)).collect()
}

fn standard_instances() -> Vec<Polytope> {
    vec![
        gen_cube(1).unwrap(),
        gen_cube(2).unwrap(),
        gen_cube(3).unwrap(),
        gen_cube(4).unwrap(),
        gen_klee_minty(2, &rat(1, 4)).unwrap(),
        gen_klee_minty(3, &rat(1, 4)).unwrap(),
        gen_klee_minty(4, &rat(1, 4)).unwrap(),
        gen_permutahedron(3).unwrap(),
        gen_permutahedron(4).unwrap(),
        gen_associahedron(4).unwrap(),
        gen_associahedron(5).unwrap(),
        gen_simplex(2).unwrap(),
        gen_simplex(3).unwrap(),
    ]
}

/// Random acyclic orientation: direct every edge along a shuffled vertex
/// order.
fn random_orientation(p: &Polytope, seed: u64) -> OrientedSkeleton<'_> {
    let mut order: Vec<usize> = (0..p.vertices.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut position = vec![0; order.len()];
    for (rank, &v) in order.iter().enumerate() {
        position[v] = rank;
    }
    let arcs = p
        .edges()
        .into_iter()
        .map(|(u, v)| {
            if position[u] < position[v] {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    OrientedSkeleton::explicit(p, arcs).unwrap()
}

#[test]
fn bypass_search_and_trace_oracle_agree_on_generated_instances() {
    for p in standard_instances() {
        let o = OrientedSkeleton::orient(&p, descending_generic_cost(&p)).unwrap();
        assert_eq!(
            o.is_hasse().hasse,
            o.billera_trace(),
            "disagreement on {}",
            p.name
        );
    }
}

#[test]
fn bypass_search_and_trace_oracle_agree_on_random_orientations() {
    for p in [
        gen_associahedron(4).unwrap(),
        gen_cube(3).unwrap(),
        gen_permutahedron(3).unwrap(),
    ] {
        for seed in 0..20 {
            let o = random_orientation(&p, seed);
            assert_eq!(
                o.is_hasse().hasse,
                o.billera_trace(),
                "disagreement on {} seed {seed}",
                p.name
            );
        }
    }
}

#[test]
fn facet_scope_agrees_with_full_face_scope_on_simple_instances() {
    for p in standard_instances() {
        if !p.simple {
            continue;
        }
        let o = OrientedSkeleton::orient(&p, descending_generic_cost(&p)).unwrap();
        let facets = check_nonrevisiting(&o, Scope::FacetsOnly).unwrap();
        let all = check_nonrevisiting(&o, Scope::AllFaces).unwrap();
        assert_eq!(facets.holds, all.holds, "scope mismatch on {}", p.name);
    }
}

#[test]
fn permutahedron_is_a_translated_zonotope_with_matching_arcs() {
    let perm = gen_permutahedron(3).unwrap();
    let gens: Vec<RatVector> = vec![ints(&[1, -1, 0]), ints(&[0, 1, -1]), ints(&[1, 0, -1])];
    let zono = gen_zonotope("difference_zonotope", &gens).unwrap();
    assert_eq!(perm.vertices.len(), zono.vertices.len());

    // The zonotope is the permutahedron translated by a constant vector.
    let shift: RatVector = perm.vertices[0]
        .iter()
        .zip(&zono.vertices[0])
        .map(|(p, z)| p - z)
        .collect();
    let translated: Vec<RatVector> = zono
        .vertices
        .iter()
        .map(|v| v.iter().zip(&shift).map(|(z, s)| z + s).collect())
        .collect();
    let map: BTreeMap<usize, usize> = translated
        .iter()
        .map(|v| perm.vertices.iter().position(|w| w == v).unwrap())
        .enumerate()
        .collect();

    let cost = ints(&[9, 3, 1]);
    let perm_o = OrientedSkeleton::orient(&perm, cost.clone()).unwrap();
    let zono_o = OrientedSkeleton::orient(&zono, cost).unwrap();
    let mut mapped: Vec<(usize, usize)> = zono_o
        .arcs
        .iter()
        .map(|&(u, v)| (map[&u], map[&v]))
        .collect();
    mapped.sort_unstable();
    let mut expected = perm_o.arcs.clone();
    expected.sort_unstable();
    assert_eq!(mapped, expected);
}

#[test]
fn face_counts_satisfy_the_euler_relation() {
    for p in standard_instances() {
        if !p.simple || p.dim == 0 {
            continue;
        }
        let mut f = vec![0i64; p.dim + 1];
        for face in p.all_faces().unwrap() {
            f[face.dim] += 1;
        }
        // Proper faces alternate to 1 - (-1)^d; the improper face is f[d].
        assert_eq!(f[p.dim], 1, "one improper face on {}", p.name);
        let alternating: i64 = f[..p.dim]
            .iter()
            .enumerate()
            .map(|(k, &count)| if k % 2 == 0 { count } else { -count })
            .sum();
        let expected = 1 - if p.dim % 2 == 0 { 1 } else { -1 };
        assert_eq!(alternating, expected, "Euler relation on {}", p.name);
    }
}

#[test]
fn rotation_and_weak_order_instances_pass_the_whole_battery() {
    for p in [
        gen_associahedron(4).unwrap(),
        gen_associahedron(5).unwrap(),
        gen_permutahedron(3).unwrap(),
    ] {
        let o = OrientedSkeleton::orient(&p, descending_generic_cost(&p)).unwrap();
        assert!(o.is_facial().unwrap().facial, "{}", p.name);
        assert!(o.is_hasse().hasse, "{}", p.name);
        let ps = o.build_poset().unwrap();
        assert!(ps.is_lattice().lattice, "{}", p.name);
        assert!(
            verify_pseudo_join_theorem(&o, &ps, 12).unwrap().holds,
            "{}",
            p.name
        );
        assert!(
            verify_distinct_pseudo_joins(&o, &ps, 12).unwrap().holds,
            "{}",
            p.name
        );
        assert!(
            verify_boolean_sublattice(&o, &ps, 12).unwrap().holds,
            "{}",
            p.name
        );
        let report = check_nonrevisiting(&o, Scope::AllFaces).unwrap();
        assert!(report.holds, "{}", p.name);
        assert!(report.longest_path <= report.hirsch_bound, "{}", p.name);
        assert!(survey_intervals(&ps, 64).clean(), "{}", p.name);
        assert!(
            matches!(conjecture_check(&o), ConjectureReport::Pass { .. }),
            "{}",
            p.name
        );
    }
}

#[test]
fn cubes_are_spindles_meeting_the_bound_exactly() {
    for d in 2..=4 {
        let p = gen_cube(d).unwrap();
        let cost: RatVector = (0..d).map(|i| rat_int(1 << i)).collect();
        let o = OrientedSkeleton::orient(&p, cost).unwrap();
        match spindle_theorem_check(&o) {
            SpindleReport::Checked {
                apexes,
                bound,
                longest,
                pass,
                ..
            } => {
                assert_eq!(apexes, (0, (1 << d) - 1));
                assert_eq!(bound, d);
                assert_eq!(longest, d);
                assert!(pass);
            }
            other => panic!("cube_{d} should be a checked spindle, got {other:?}"),
        }
    }
}

#[test]
fn walks_end_at_the_sink_within_the_longest_path() {
    for p in [
        gen_permutahedron(3).unwrap(),
        gen_associahedron(5).unwrap(),
        gen_klee_minty(3, &rat(1, 4)).unwrap(),
    ] {
        let o = OrientedSkeleton::orient(&p, descending_generic_cost(&p)).unwrap();
        let (longest, _) = longest_directed_path(&o);
        let sink = o.sink().unwrap();
        let rules = [
            PivotRule::GreatestImprovement,
            PivotRule::LeastIndex,
            PivotRule::AdversarialLongest,
            PivotRule::Random(0),
            PivotRule::Random(1),
            PivotRule::Random(2),
        ];
        for rule in rules {
            let trace = pivot_walk(&o, rule, None).unwrap();
            assert_eq!(trace.path.last(), Some(&sink), "{}", p.name);
            assert!(trace.steps <= longest, "{}", p.name);
        }
    }
}
