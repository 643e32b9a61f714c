//! Exact linear algebra over the rationals: rank, affine dimension, nullspace.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{Rat, RatVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("affine dimension of an empty point set is undefined")]
    EmptyPointSet,
}

/// Rectangular matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<RatVector>,
    ncols: usize,
}

impl RatMatrix {
    /// Panics unless all rows have equal length.
    pub fn new(rows: Vec<RatVector>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged matrix rows"
        );
        RatMatrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn transpose(&self) -> RatMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        RatMatrix {
            rows,
            ncols: self.rows.len(),
        }
    }

    /// Rank over the rationals. Rows are cleared to integers first, then
    /// eliminated fraction-free with per-row gcd reduction to keep entries
    /// small.
    pub fn rank(&self) -> usize {
        rank_int(self.rows.iter().map(|r| clear_denominators(r)).collect())
    }

    /// Basis of the right kernel {x : Mx = 0} via reduced row echelon form.
    pub fn nullspace(&self) -> Vec<RatVector> {
        let mut rows: Vec<RatVector> = self.rows.clone();
        let ncols = self.ncols;
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..ncols {
            let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let inv = rows[pivot_row][col].recip();
            for x in rows[pivot_row].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..rows.len() {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for j in 0..ncols {
                        let delta = &rows[pivot_row][j] * &factor;
                        rows[r][j] = &rows[r][j] - delta;
                    }
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        let zero = Rat::zero();
        let one = Rat::from_integer(BigInt::from(1));
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![zero.clone(); ncols];
            v[free] = one.clone();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn reduce_row(row: &mut [BigInt]) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank_int(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        // Smallest nonzero pivot limits coefficient growth.
        let pivot = (top..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].abs());
        let Some(pivot) = pivot else { continue };
        rows.swap(top, pivot);
        let (pivot_row, rest) = {
            let (a, b) = rows.split_at_mut(top + 1);
            (&a[top], b)
        };
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot_row[col].gcd(&row[col]);
            let pf = &pivot_row[col] / &g;
            let rf = &row[col] / &g;
            for j in 0..ncols {
                row[j] = &row[j] * &pf - &pivot_row[j] * &rf;
            }
            reduce_row(row);
        }
        rank += 1;
        top += 1;
    }
    rank
}

/// Dimension of the affine hull: rank of the differences from the first point.
pub fn affine_dim(points: &[RatVector]) -> Result<usize, LinalgError> {
    let Some(first) = points.first() else {
        return Err(LinalgError::EmptyPointSet);
    };
    let diffs: Vec<RatVector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Ok(RatMatrix::new(diffs).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_identity_is_full() {
        assert_eq!(m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).rank(), 3);
    }

    #[test]
    fn rank_zero_matrix_is_zero() {
        assert_eq!(m(&[&[0, 0], &[0, 0], &[0, 0]]).rank(), 0);
    }

    #[test]
    fn rank_with_dependent_row() {
        // (2,4) = 2*(1,2); (0,1) independent.
        assert_eq!(m(&[&[1, 2], &[2, 4], &[0, 1]]).rank(), 2);
    }

    #[test]
    fn rank_handles_fractions() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 2), rat(1, 1)],
            vec![rat(1, 1), rat(2, 3)],
        ];
        // Row 3 = 2 * row 1; row 2 independent (determinant with row 1 is 1/3).
        assert_eq!(RatMatrix::new(rows).rank(), 2);
    }

    #[test]
    fn affine_dim_of_single_point_is_zero() {
        assert_eq!(affine_dim(&[vec![rat_int(4), rat_int(5)]]), Ok(0));
    }

    #[test]
    fn affine_dim_of_triangle_is_two() {
        let pts = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert_eq!(affine_dim(&pts), Ok(2));
    }

    #[test]
    fn affine_dim_of_pentagon_in_plane_is_two() {
        // Five points lying in the plane x+y+z = 6.
        let pts: Vec<RatVector> = [
            [3, 2, 1],
            [3, 1, 2],
            [1, 4, 1],
            [2, 1, 3],
            [1, 2, 3],
        ]
        .iter()
        .map(|p| p.iter().map(|&x| rat_int(x)).collect())
        .collect();
        assert_eq!(affine_dim(&pts), Ok(2));
    }

    #[test]
    fn affine_dim_rejects_empty_input() {
        assert_eq!(affine_dim(&[]), Err(LinalgError::EmptyPointSet));
    }

    #[test]
    fn nullspace_of_full_rank_is_empty() {
        assert!(m(&[&[1, 0], &[0, 1]]).nullspace().is_empty());
    }

    #[test]
    fn nullspace_vectors_are_killed_by_the_matrix() {
        let mat = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let basis = mat.nullspace();
        assert_eq!(basis.len(), 1);
        for v in &basis {
            for row in mat.rows() {
                assert_eq!(crate::exact::dot(row, v), rat_int(0));
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-5i64..=5, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(rows in arb_matrix()) {
            let mat = RatMatrix::new(
                rows.iter()
                    .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                    .collect(),
            );
            prop_assert_eq!(mat.rank(), mat.transpose().rank());
        }

        #[test]
        fn rank_plus_nullity_is_column_count(rows in arb_matrix()) {
            let mat = RatMatrix::new(
                rows.iter()
                    .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                    .collect(),
            );
            prop_assert_eq!(mat.rank() + mat.nullspace().len(), mat.ncols());
        }
    }
}
