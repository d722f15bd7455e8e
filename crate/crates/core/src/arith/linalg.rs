use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{snf, ArithError, IntMatrix, RatMatrix};

/// Inertia of a real symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn dimension(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }

    pub fn is_negative_semidefinite(&self) -> bool {
        self.positive == 0
    }
}

/// Counts positive, negative and zero squares by symmetric Gaussian congruence.
///
/// Pivot choice: the first nonzero diagonal entry of the trailing block;
/// failing that, the first nonzero off-diagonal entry `(i, j)` is folded into
/// the diagonal by `e_i <- e_i + e_j`.
pub fn rank_signature(m: &RatMatrix) -> Result<Signature, ArithError> {
    if !m.is_symmetric() {
        return Err(ArithError::NotSymmetric);
    }
    let n = m.rows();
    let mut a = m.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let diag = (k..n).find(|&i| !a[(i, i)].is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => {
                let off = (k..n).find_map(|i| (i + 1..n).find(|&j| !a[(i, j)].is_zero()).map(|j| (i, j)));
                match off {
                    Some((i, j)) => {
                        sym_add(&mut a, i, j);
                        i
                    }
                    None => break,
                }
            }
        };
        sym_swap(&mut a, k, pivot);
        let p = a[(k, k)].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &p;
            for j in k..n {
                let v = &f * &a[(k, j)];
                a[(i, j)] -= v;
            }
            for j in k..n {
                let v = &f * &a[(j, k)];
                a[(j, i)] -= v;
            }
        }
        k += 1;
    }
    Ok(Signature {
        positive: pos,
        negative: neg,
        zero: n - pos - neg,
    })
}

fn sym_swap(a: &mut RatMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Basis change `e_i <- e_i + e_j` applied as a congruence.
fn sym_add(a: &mut RatMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = a[(j, c)].clone();
        a[(i, c)] += v;
    }
    for r in 0..n {
        let v = a[(r, j)].clone();
        a[(r, i)] += v;
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut RatMatrix) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = a[(r, c)].recip();
        for j in 0..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..cols {
                let v = &f * &a[(r, j)];
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rational basis of the radical of a symmetric matrix, one vector per free
/// column of the echelon form (free coordinate set to 1).
pub fn kernel_basis(m: &RatMatrix) -> Result<Vec<Vec<BigRational>>, ArithError> {
    if !m.is_symmetric() {
        return Err(ArithError::NotSymmetric);
    }
    Ok(rational_kernel(m))
}

/// Right kernel of an arbitrary rational matrix.
pub fn rational_kernel(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Saturated integral right kernel of an integer matrix, as the columns of a
/// unimodular transform. Rows of the result are the kernel vectors.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let r = snf(m);
    let rank = r.rank();
    (rank..m.cols())
        .map(|j| (0..m.cols()).map(|i| r.right[(i, j)].clone()).collect())
        .collect()
}

/// Row-style Hermite reduction: returns a basis (as rows) of the Z-span of the
/// rows of `m`. Zero rows are dropped.
pub fn row_basis(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c among rows r..
            let p = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()));
            let Some(p) = p else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                if a[(r, c)].is_negative() {
                    a.negate_row(r);
                }
                // reduce entries above the pivot into [0, pivot)
                for i in 0..r {
                    let q = -a[(i, c)].div_floor(&a[(r, c)]);
                    a.add_row_multiple(i, r, &q);
                }
                r += 1;
                break;
            }
        }
    }
    IntMatrix::from_fn(r, cols, |i, j| a[(i, j)].clone())
}

/// Basis of the Z-module spanned by rational generator rows.
pub fn rational_row_basis(gens: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let d = super::common_denominator(gens.iter().flatten());
    let cols = gens[0].len();
    let scaled = IntMatrix::from_fn(gens.len(), cols, |i, j| {
        (&gens[i][j] * BigRational::from_integer(d.clone())).to_integer()
    });
    let b = row_basis(&scaled);
    (0..b.rows())
        .map(|i| {
            b.row(i)
                .iter()
                .map(|x| BigRational::new(x.clone(), d.clone()))
                .collect()
        })
        .collect()
}

/// Solves `basis^T c = v` for integer coordinates `c` of `v` in the row basis,
/// if `v` lies in the Q-span.
pub fn coordinates(basis: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = v.len();
    // augmented system: columns are basis vectors, last column is v
    let mut a = RatMatrix::from_fn(n, k + 1, |i, j| {
        if j < k {
            basis[j][i].clone()
        } else {
            v[i].clone()
        }
    });
    let pivots = rref(&mut a);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![BigRational::zero(); k];
    for (r, &pc) in pivots.iter().enumerate() {
        c[pc] = a[(r, k)].clone();
    }
    Some(c)
}

pub fn gcd_of(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
