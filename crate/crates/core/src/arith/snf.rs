use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `left * m * right = diag(invariant_factors)` padded with
/// zeros, with `left` and `right` unimodular.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// `min(rows, cols)` entries, non-negative, each dividing the next
    /// (zeros trail).
    pub invariant_factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Product of the nonzero invariant factors.
    pub fn nonzero_product(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .product()
    }
}

/// Kummer-Smith elimination. The pivot at each stage is the entry of least
/// nonzero absolute value in the trailing block, first in row-major order.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_pivot(&a, t) else {
                // trailing block is zero
                return finish(a, left, right, steps);
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&p);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&p);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    finish(a, left, right, steps)
}

fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().map_or(true, |(_, _, b)| av < *b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn finish(a: IntMatrix, left: IntMatrix, right: IntMatrix, steps: usize) -> SnfResult {
    SnfResult {
        invariant_factors: (0..steps).map(|i| a[(i, i)].clone()).collect(),
        left,
        right,
    }
}
