//! Strict-feasibility oracle: exact simplex with Bland's anti-cycling rule.

use num_traits::{One, Signed, Zero};

use crate::exact::{dot, Rat, RatVector};

/// Required sign of g·c for one constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn factor(self) -> Rat {
        match self {
            Sign::Positive => Rat::one(),
            Sign::Negative => -Rat::one(),
        }
    }
}

/// Searches for c with sign(g·c) matching every constraint, all strictly.
///
/// Reduction: write c = u - v with u, v >= 0 and maximize a slack t subject
/// to s_i(g_i·c) >= t and t <= 1; the system is strictly feasible iff the
/// optimum is positive. Bland's least-index rule makes the pivoting exact,
/// deterministic, and cycle-free. Returns a witness c on success.
pub fn strictly_feasible(constraints: &[(RatVector, Sign)]) -> Option<RatVector> {
    let d = constraints.first().map_or(0, |(g, _)| g.len());
    assert!(
        constraints.iter().all(|(g, _)| g.len() == d),
        "constraint normals of mixed dimension"
    );

    let m = constraints.len();
    let t_col = 2 * d;
    let n_structural = 2 * d + 1;
    let n_cols = n_structural + m + 1;

    // Rows: s(g·u) - s(g·v) - ... rearranged to <=0 form, then t <= 1.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for (i, (g, s)) in constraints.iter().enumerate() {
        let mut row = vec![Rat::zero(); n_cols + 1];
        for j in 0..d {
            let coeff = -(s.factor() * &g[j]);
            row[j] = coeff.clone();
            row[d + j] = -coeff;
        }
        row[t_col] = Rat::one();
        row[n_structural + i] = Rat::one();
        rows.push(row);
    }
    let mut bound_row = vec![Rat::zero(); n_cols + 1];
    bound_row[t_col] = Rat::one();
    bound_row[n_structural + m] = Rat::one();
    bound_row[n_cols] = Rat::one();
    rows.push(bound_row);

    let mut obj = vec![Rat::zero(); n_cols + 1];
    obj[t_col] = Rat::one();
    let mut basis: Vec<usize> = (n_structural..n_structural + m + 1).collect();

    loop {
        let Some(enter) = (0..n_cols).find(|&j| obj[j].is_positive()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[n_cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (r, _) = leave.expect("objective t is bounded above by 1");
        let pivot = rows[r][enter].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = rows[r].clone();
        for (rr, row) in rows.iter_mut().enumerate() {
            if rr != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * p;
            }
        }
        basis[r] = enter;
    }

    let value_of = |col: usize| -> Rat {
        basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rat::zero, |r| rows[r][n_cols].clone())
    };
    if !value_of(t_col).is_positive() {
        return None;
    }
    let witness: RatVector = (0..d).map(|j| value_of(j) - value_of(d + j)).collect();
    debug_assert!(constraints
        .iter()
        .all(|(g, s)| (s.factor() * dot(g, &witness)).is_positive()));
    Some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use proptest::prelude::*;

    fn v(coords: &[i64]) -> RatVector {
        coords.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn single_halfspace_is_feasible() {
        let w = strictly_feasible(&[(v(&[1]), Sign::Positive)]).unwrap();
        assert!(dot(&v(&[1]), &w).is_positive());
    }

    #[test]
    fn opposite_halfspaces_are_infeasible() {
        let cs = [(v(&[1]), Sign::Positive), (v(&[-1]), Sign::Positive)];
        assert_eq!(strictly_feasible(&cs), None);
    }

    #[test]
    fn forced_positive_sum_cannot_be_negative() {
        // g1·c > 0 and g2·c > 0 force (g1+g2)·c > 0.
        let cs = [
            (v(&[1, 0]), Sign::Positive),
            (v(&[0, 1]), Sign::Positive),
            (v(&[1, 1]), Sign::Negative),
        ];
        assert_eq!(strictly_feasible(&cs), None);
    }

    #[test]
    fn consistent_signs_are_feasible_with_valid_witness() {
        let cs = [
            (v(&[1, 0]), Sign::Positive),
            (v(&[0, 1]), Sign::Positive),
            (v(&[1, 1]), Sign::Positive),
            (v(&[1, -1]), Sign::Negative),
        ];
        let w = strictly_feasible(&cs).unwrap();
        for (g, s) in &cs {
            assert!((s.factor() * dot(g, &w)).is_positive());
        }
    }

    #[test]
    fn empty_constraint_set_is_feasible() {
        assert_eq!(strictly_feasible(&[]), Some(vec![]));
    }

    #[test]
    fn zero_normal_is_infeasible() {
        assert_eq!(strictly_feasible(&[(v(&[0, 0]), Sign::Positive)]), None);
    }

    fn arb_constraints() -> impl Strategy<Value = Vec<(Vec<i64>, Sign)>> {
        (1usize..=3).prop_flat_map(|d| {
            proptest::collection::vec(
                (
                    proptest::collection::vec(-3i64..=3, d),
                    prop_oneof![Just(Sign::Positive), Just(Sign::Negative)],
                ),
                1..=5,
            )
        })
    }

    proptest! {
        #[test]
        fn witness_satisfies_every_constraint_strictly(cs in arb_constraints()) {
            let cs: Vec<(RatVector, Sign)> =
                cs.into_iter().map(|(g, s)| (v(&g), s)).collect();
            if let Some(w) = strictly_feasible(&cs) {
                for (g, s) in &cs {
                    prop_assert!((s.factor() * dot(g, &w)).is_positive());
                }
            }
        }

        #[test]
        fn removing_a_constraint_never_flips_to_infeasible(cs in arb_constraints()) {
            let cs: Vec<(RatVector, Sign)> =
                cs.into_iter().map(|(g, s)| (v(&g), s)).collect();
            if strictly_feasible(&cs).is_some() {
                for skip in 0..cs.len() {
                    let reduced: Vec<_> = cs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, c)| c.clone())
                        .collect();
                    prop_assert!(strictly_feasible(&reduced).is_some());
                }
            }
        }
    }
}
