//! The quadratic form `q(x) = <x,x>/2 mod 2` on `K/2K` and its polar form
//! `f(x, y) = <x,y> mod 2`. Classes are bitmasks over the basis, so the rank
//! is capped at 64.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Embedded, Lattice, LatticeError, QVec};

const MAX_DIM: usize = 64;
/// Ranks up to this are also enumerated exhaustively as a cross-check.
const EXHAUSTIVE_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2Form {
    dimension: usize,
    /// Bit `i`: `q(e_i)`.
    q_diag: u64,
    /// Row bitmasks of `f`.
    f_rows: Vec<u64>,
}

impl Mod2Form {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn f(&self, x: u64, y: u64) -> u8 {
        let mut acc = 0u32;
        for i in bits(x) {
            acc += (self.f_rows[i] & y).count_ones();
        }
        (acc & 1) as u8
    }

    pub fn q(&self, x: u64) -> u8 {
        let mut acc = (x & self.q_diag).count_ones();
        for i in bits(x) {
            let above = if i + 1 >= 64 { 0 } else { !0u64 << (i + 1) };
            acc += (self.f_rows[i] & x & above).count_ones();
        }
        (acc & 1) as u8
    }

    pub fn f_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.dimension)
            .map(|i| (0..self.dimension).map(|j| ((self.f_rows[i] >> j) & 1) as u8).collect())
            .collect()
    }

    /// `q` on every class, indexed by bitmask; `None` above rank 16.
    pub fn q_values(&self) -> Option<Vec<u8>> {
        if self.dimension > EXHAUSTIVE_DIM {
            return None;
        }
        Some((0..1u64 << self.dimension).map(|x| self.q(x)).collect())
    }

    /// Radical of `f`, as an echelon basis.
    pub fn f_kernel(&self) -> Vec<u64> {
        gf2_nullspace(&self.f_rows, self.dimension)
    }

    /// `{x in ker f : q(x) = 0}`. On `ker f` the form `q` is additive, so this
    /// is the kernel of a linear functional.
    fn kernel(&self) -> Vec<u64> {
        let rad = self.f_kernel();
        let pivot = rad.iter().position(|&b| self.q(b) == 1);
        let kernel: Vec<u64> = match pivot {
            None => rad,
            Some(p) => rad
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, &b)| if self.q(b) == 1 { b ^ rad[p] } else { b })
                .collect(),
        };
        echelon(kernel)
    }

    fn kernel_exhaustive(&self) -> Vec<u64> {
        let members: Vec<u64> = (0..1u64 << self.dimension)
            .filter(|&x| self.q(x) == 0 && self.f_rows.iter().all(|r| (r & x).count_ones() % 2 == 0))
            .collect();
        echelon(members)
    }
}

fn bits(x: u64) -> impl Iterator<Item = usize> {
    let mut x = x;
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

/// Reduced echelon basis (pivot = lowest set bit) of the span of `v`.
pub(crate) fn echelon(v: Vec<u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut x in v {
        for &b in &basis {
            if x & (b & b.wrapping_neg()) != 0 {
                x ^= b;
            }
        }
        if x == 0 {
            continue;
        }
        let low = x & x.wrapping_neg();
        for b in basis.iter_mut() {
            if *b & low != 0 {
                *b ^= x;
            }
        }
        basis.push(x);
    }
    basis.sort_by_key(|b| b.trailing_zeros());
    basis
}

pub(crate) fn gf2_rank(v: &[u64]) -> usize {
    echelon(v.to_vec()).len()
}

fn gf2_nullspace(rows: &[u64], n: usize) -> Vec<u64> {
    // solve rows * x = 0 by Gaussian elimination on columns
    let mut a: Vec<u64> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| a[i] >> c & 1 == 1) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i] >> c & 1 == 1 {
                a[i] ^= a[r];
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let basis = (0..n)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut x = 1u64 << free;
            for &(row, pc) in &pivots {
                if a[row] >> free & 1 == 1 {
                    x |= 1 << pc;
                }
            }
            x
        })
        .collect();
    echelon(basis)
}

fn mod2(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(2)).to_u64().expect("0 or 1")
}

pub fn mod2_form(k: &Lattice) -> Result<Mod2Form, LatticeError> {
    if !k.is_even() {
        return Err(LatticeError::Odd);
    }
    let n = k.rank();
    if n > MAX_DIM {
        return Err(LatticeError::TooLarge(n));
    }
    let g = k.gram();
    let mut q_diag = 0u64;
    let mut f_rows = vec![0u64; n];
    for i in 0..n {
        q_diag |= mod2(&(&g[(i, i)] / 2)) << i;
        for j in 0..n {
            f_rows[i] |= mod2(&g[(i, j)]) << j;
        }
    }
    Ok(Mod2Form {
        dimension: n,
        q_diag,
        f_rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod2Nullity {
    pub nullity: usize,
    pub rank: usize,
    /// Echelon basis of the kernel, one bitmask per vector.
    pub kernel_basis: Vec<u64>,
}

pub fn mod2_nullity(k: &Lattice) -> Result<Mod2Nullity, LatticeError> {
    let form = mod2_form(k)?;
    let kernel = form.kernel();
    if form.dimension <= EXHAUSTIVE_DIM && form.kernel_exhaustive() != kernel {
        return Err(LatticeError::Internal("mod-2 kernel enumeration disagrees".into()));
    }
    Ok(Mod2Nullity {
        nullity: kernel.len(),
        rank: form.dimension - kernel.len(),
        kernel_basis: kernel,
    })
}

/// A root lattice `K` with an isotropic subgroup `H` of `K/2K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RInvariant {
    pub k: Lattice,
    /// Generators of `H` as bitmasks; reduced to an echelon basis.
    pub h: Vec<u64>,
}

impl RInvariant {
    pub fn new(k: Lattice, h: Vec<u64>) -> Result<Self, LatticeError> {
        let form = mod2_form(&k)?;
        check_isotropic(&form, &h)?;
        Ok(Self { k, h: echelon(h) })
    }

    pub fn dim_h(&self) -> usize {
        self.h.len()
    }
}

fn check_isotropic(form: &Mod2Form, h: &[u64]) -> Result<(), LatticeError> {
    let n = form.dimension();
    for (i, &x) in h.iter().enumerate() {
        if n < 64 && x >> n != 0 {
            return Err(LatticeError::Dimension {
                expected: n,
                got: 64 - x.leading_zeros() as usize,
            });
        }
        if form.q(x) != 0 {
            return Err(LatticeError::NotIsotropic(format!("q({x:#b}) = 1")));
        }
        for &y in &h[..i] {
            if form.f(x, y) != 0 {
                return Err(LatticeError::NotIsotropic(format!("f({x:#b}, {y:#b}) = 1")));
            }
        }
    }
    Ok(())
}

/// `K_H = {x in K (x) Q : 2x in H}`, spanned by `K` and the halves of the
/// 0/1 lifts of the generators of `H`. The result may be odd.
pub fn half_overlattice(k: &Lattice, h: &[u64]) -> Result<Embedded, LatticeError> {
    let form = mod2_form(k)?;
    check_isotropic(&form, h)?;
    let rad = form.f_kernel();
    let n = k.rank();
    let halves: Vec<QVec> = h
        .iter()
        .map(|&x| {
            if gf2_rank(&[rad.clone(), vec![x]].concat()) != rad.len() {
                return Err(LatticeError::NonIntegral(format!(
                    "{x:#b}/2 pairs to a half-integer with K"
                )));
            }
            Ok((0..n)
                .map(|i| BigRational::new(BigInt::from((x >> i) & 1), BigInt::from(2)))
                .collect())
        })
        .collect::<Result<_, _>>()?;
    let ext = k.extend_by(&halves)?;
    let expected = BigInt::from(1u64 << gf2_rank(h));
    let det_k = k.det();
    if !det_k.is_zero() && det_k != ext.lattice.det() * &expected * &expected {
        return Err(LatticeError::Internal("half-overlattice index".into()));
    }
    Ok(ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lattice::make_named;

    fn nullity(s: &str) -> usize {
        mod2_nullity(&make_named(s).unwrap()).unwrap().nullity
    }

    #[test]
    fn small_forms() {
        let a1 = mod2_form(&make_named("A1").unwrap()).unwrap();
        assert_eq!(a1.q_values().unwrap(), vec![0, 1]);
        assert_eq!(a1.f_matrix(), vec![vec![0]]);
        assert_eq!(nullity("A1"), 0);
        let r = mod2_nullity(&make_named("A1+A1").unwrap()).unwrap();
        assert_eq!((r.nullity, r.rank), (1, 1));
        assert_eq!(r.kernel_basis, vec![0b11]);
    }

    #[test]
    fn quoted_nullities() {
        assert_eq!(nullity("E6"), 0);
        assert_eq!(nullity("A5+A5+A1+A1"), 3);
        assert_eq!(nullity("D8+A2+A2"), 2);
        assert_eq!(nullity("E8+A2+A2"), 0);
    }

    #[test]
    fn large_rank_uses_linear_algebra() {
        // 2^24 classes; not enumerated
        assert_eq!(nullity("D8"), 2);
        assert_eq!(nullity("D8+D8+E8"), 4);
        assert_eq!(nullity("A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1"), 17);
    }

    #[test]
    fn odd_and_too_large() {
        let odd = Lattice::from_i64(&[vec![-1]]).unwrap();
        assert_eq!(mod2_form(&odd), Err(LatticeError::Odd));
        let big = make_named(&vec!["A1"; 65].join("+")).unwrap();
        assert_eq!(mod2_form(&big), Err(LatticeError::TooLarge(65)));
    }

    #[test]
    fn half_overlattice_examples() {
        let k = make_named("A1+A1").unwrap();
        let kh = half_overlattice(&k, &[0b11]).unwrap();
        let v = vec![rat(1, 2), rat(1, 2)];
        assert!(kh.contains(&v));
        assert_eq!(k.norm(&v), rat(-1, 1));
        assert!(!kh.lattice.is_even());

        let same = half_overlattice(&k, &[]).unwrap();
        assert_eq!(same.lattice.gram(), k.gram());
        assert!(matches!(half_overlattice(&k, &[0b01]), Err(LatticeError::NotIsotropic(_))));

        let k = make_named("D8+A2+A2").unwrap();
        let h = mod2_nullity(&k).unwrap().kernel_basis;
        // the two D8 kernel classes are q-isotropic but their halves pair to 1/2
        assert!(matches!(half_overlattice(&k, &h), Err(LatticeError::NonIntegral(_))));
        let kh = half_overlattice(&k, &h[..1]).unwrap();
        assert_eq!(kh.lattice.rank(), 12);
        assert_eq!(kh.lattice.det() * BigInt::from(4), k.det());
    }

    #[test]
    fn r_invariant_requires_isotropy() {
        let k = make_named("A5+A5+A1+A1").unwrap();
        let h = mod2_nullity(&k).unwrap().kernel_basis;
        let r = RInvariant::new(k.clone(), h).unwrap();
        assert_eq!(r.dim_h(), 3);
        assert!(RInvariant::new(k, vec![1]).is_err());
    }
}
