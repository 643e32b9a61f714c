//! Hand-checked polytopes shared across unit tests.

use crate::exact::{rat, rat_int, Rat, RatVector};
use crate::polytope::Polytope;

fn ints(coords: &[i64]) -> RatVector {
    coords.iter().map(|&c| rat_int(c)).collect()
}

fn build(name: &str, vertices: Vec<RatVector>, ineqs: Vec<(RatVector, Rat)>) -> Polytope {
    let p = Polytope::from_inequalities(name, vertices, ineqs).unwrap();
    assert!(p.validate().is_empty(), "fixture {name} is invalid");
    p
}

/// Square [-1,1]^2; vertices in binary order (-1,-1),(1,-1),(-1,1),(1,1).
pub fn square() -> Polytope {
    build(
        "square",
        vec![ints(&[-1, -1]), ints(&[1, -1]), ints(&[-1, 1]), ints(&[1, 1])],
        vec![
            (ints(&[1, 0]), rat_int(1)),
            (ints(&[-1, 0]), rat_int(1)),
            (ints(&[0, 1]), rat_int(1)),
            (ints(&[0, -1]), rat_int(1)),
        ],
    )
}

/// Cube [-1,1]^3; vertex i has coordinates (±1) by the binary digits of i,
/// low bit first, with 0 -> -1 and 1 -> +1.
pub fn cube3() -> Polytope {
    let mut vertices = Vec::new();
    for i in 0..8u32 {
        vertices.push(ints(&[
            if i & 1 == 1 { 1 } else { -1 },
            if i >> 1 & 1 == 1 { 1 } else { -1 },
            if i >> 2 & 1 == 1 { 1 } else { -1 },
        ]));
    }
    let mut ineqs = Vec::new();
    for axis in 0..3 {
        for sign in [1i64, -1] {
            let mut n = vec![0i64; 3];
            n[axis] = sign;
            ineqs.push((ints(&n), rat_int(1)));
        }
    }
    build("cube_3", vertices, ineqs)
}

/// Pentagon with vertices (3,2,1),(3,1,2),(1,4,1),(2,1,3),(1,2,3) in the
/// plane x1+x2+x3 = 6, cut out by x1>=1, x1+x2>=3, x2>=1, x2+x3>=3, x3>=1.
pub fn pentagon() -> Polytope {
    build(
        "pentagon",
        vec![
            ints(&[3, 2, 1]),
            ints(&[3, 1, 2]),
            ints(&[1, 4, 1]),
            ints(&[2, 1, 3]),
            ints(&[1, 2, 3]),
        ],
        vec![
            (ints(&[-1, 0, 0]), rat_int(-1)),
            (ints(&[-1, -1, 0]), rat_int(-3)),
            (ints(&[0, -1, 0]), rat_int(-1)),
            (ints(&[0, -1, -1]), rat_int(-3)),
            (ints(&[0, 0, -1]), rat_int(-1)),
        ],
    )
}

/// Squashed square with vertices (0,0),(1,1/4),(1,3/4),(0,1): the d=2 member
/// of the worst-case pivoting family with distortion 1/4.
pub fn km2() -> Polytope {
    build(
        "klee_minty_2",
        vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat(1, 4)],
            vec![rat_int(1), rat(3, 4)],
            vec![rat_int(0), rat_int(1)],
        ],
        vec![
            (ints(&[-1, 0]), rat_int(0)),
            (ints(&[1, 0]), rat_int(1)),
            (vec![rat(1, 4), rat_int(-1)], rat_int(0)),
            (vec![rat(1, 4), rat_int(1)], rat_int(1)),
        ],
    )
}

/// Octahedron conv{±e_i}: valid but not simple (each vertex on 4 facets).
pub fn octahedron() -> Polytope {
    let mut vertices = Vec::new();
    for axis in 0..3 {
        for sign in [1i64, -1] {
            let mut v = vec![0i64; 3];
            v[axis] = sign;
            vertices.push(ints(&v));
        }
    }
    let mut ineqs = Vec::new();
    for sx in [1i64, -1] {
        for sy in [1i64, -1] {
            for sz in [1i64, -1] {
                ineqs.push((ints(&[sx, sy, sz]), rat_int(1)));
            }
        }
    }
    build("octahedron", vertices, ineqs)
}

/// Hexagon of all permutations of (1,2,3), cut out by the six subset sums
/// sum_{i in S} x_i >= |S|(|S|+1)/2 for nonempty proper S.
pub fn hexagon_p3() -> Polytope {
    let vertices = vec![
        ints(&[1, 2, 3]),
        ints(&[1, 3, 2]),
        ints(&[2, 1, 3]),
        ints(&[2, 3, 1]),
        ints(&[3, 1, 2]),
        ints(&[3, 2, 1]),
    ];
    let mut ineqs = Vec::new();
    for mask in 1u32..7 {
        let size = mask.count_ones() as i64;
        let mut n = vec![0i64; 3];
        for (i, ni) in n.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *ni = -1;
            }
        }
        ineqs.push((ints(&n), rat_int(-(size * (size + 1) / 2))));
    }
    build("permutahedron_3", vertices, ineqs)
}

/// Cube with a cone glued on the x=1 facet and the apex sliced off at
/// x = 3/2. Valid, non-simple (the four x=1 cube vertices each lie on four
/// facets), and its skeleton directed by c = (100,2,1) is a lattice.
pub fn sliced_cube_cone() -> Polytope {
    let mut vertices = Vec::new();
    for i in 0..8u32 {
        vertices.push(ints(&[
            if i & 1 == 1 { 1 } else { -1 },
            if i >> 1 & 1 == 1 { 1 } else { -1 },
            if i >> 2 & 1 == 1 { 1 } else { -1 },
        ]));
    }
    for (y, z) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        vertices.push(vec![rat(3, 2), rat(y, 2), rat(z, 2)]);
    }
    build(
        "sliced_cube_cone",
        vertices,
        vec![
            (ints(&[-1, 0, 0]), rat_int(1)),
            (ints(&[0, 1, 0]), rat_int(1)),
            (ints(&[0, -1, 0]), rat_int(1)),
            (ints(&[0, 0, 1]), rat_int(1)),
            (ints(&[0, 0, -1]), rat_int(1)),
            (ints(&[1, 1, 0]), rat_int(2)),
            (ints(&[1, -1, 0]), rat_int(2)),
            (ints(&[1, 0, 1]), rat_int(2)),
            (ints(&[1, 0, -1]), rat_int(2)),
            (ints(&[1, 0, 0]), rat(3, 2)),
        ],
    )
}
