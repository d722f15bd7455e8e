use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{qvec_to_string, reduce_mod, Embedded, Lattice, LatticeError, QVec};
use crate::arith::snf;

/// Largest `|L*/L|` for which `overlattice` enumerates both discriminant
/// groups to compare their forms.
const FORM_CHECK_LIMIT: u64 = 4096;

/// `L*/L` as a product of cyclic groups, with one rational lift per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Factors `> 1`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// `generator_lifts[i]` has order `invariant_factors[i]` modulo `L`;
    /// coordinates lie in `[0, 1)`.
    pub generator_lifts: Vec<QVec>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `sum coeffs[i] * lift[i]`, reduced mod `L`.
    pub fn element(&self, coeffs: &[BigInt]) -> QVec {
        let n = self.generator_lifts.first().map_or(0, Vec::len);
        let mut x = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.generator_lifts) {
            let c = BigRational::from_integer(c.clone());
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += &c * gi;
            }
        }
        x.iter().map(|v| reduce_mod(v, 1)).collect()
    }

    /// All elements in mixed-radix order, or `None` above `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<QVec>> {
        let order = self.order().to_u64()?;
        if order > limit {
            return None;
        }
        let radices: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("bounded by order"))
            .collect();
        let mut out = Vec::with_capacity(order as usize);
        let mut digits = vec![0u64; radices.len()];
        for _ in 0..order {
            let coeffs: Vec<BigInt> = digits.iter().map(|&d| BigInt::from(d)).collect();
            out.push(self.element(&coeffs));
            for (d, r) in digits.iter_mut().zip(&radices) {
                *d += 1;
                if *d < *r {
                    break;
                }
                *d = 0;
            }
        }
        Some(out)
    }
}

pub fn discriminant_group(l: &Lattice) -> Result<DiscriminantGroup, LatticeError> {
    let r = snf(l.gram());
    if r.rank() < l.rank() {
        return Err(LatticeError::Degenerate);
    }
    let mut factors = Vec::new();
    let mut lifts = Vec::new();
    for (i, d) in r.invariant_factors.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let lift: QVec = (0..l.rank())
            .map(|k| reduce_mod(&BigRational::new(r.right[(k, i)].clone(), d.clone()), 1))
            .collect();
        factors.push(d.clone());
        lifts.push(lift);
    }
    Ok(DiscriminantGroup {
        invariant_factors: factors,
        generator_lifts: lifts,
    })
}

fn require_dual(l: &Lattice, x: &[BigRational]) -> Result<(), LatticeError> {
    l.check_dim(x)?;
    if !l.in_dual(x) {
        return Err(LatticeError::NotInDual(qvec_to_string(x)));
    }
    Ok(())
}

/// `q_L(x) = <x, x>` in `[0, 2)`.
pub fn disc_q(l: &Lattice, x: &[BigRational]) -> Result<BigRational, LatticeError> {
    if !l.is_even() {
        return Err(LatticeError::Odd);
    }
    require_dual(l, x)?;
    Ok(reduce_mod(&l.norm(x), 2))
}

/// `b_L(x, y) = <x, y>` in `[0, 1)`.
pub fn disc_b(l: &Lattice, x: &[BigRational], y: &[BigRational]) -> Result<BigRational, LatticeError> {
    require_dual(l, x)?;
    require_dual(l, y)?;
    Ok(reduce_mod(&l.pair(x, y), 1))
}

fn q_multiset(l: &Lattice, xs: &[QVec]) -> BTreeMap<BigRational, u64> {
    let mut m = BTreeMap::new();
    for x in xs {
        *m.entry(reduce_mod(&l.norm(x), 2)).or_insert(0) += 1;
    }
    m
}

/// Even overlattice `L'` with `L'/L = H`, where `H` is generated by `glue`
/// (rational lifts of elements of `L*/L`). The basis of the result is
/// expressed in the coordinates of `L`.
pub fn overlattice(l: &Lattice, glue: &[QVec]) -> Result<Embedded, LatticeError> {
    if !l.is_even() {
        return Err(LatticeError::Odd);
    }
    if !l.is_nondegenerate() {
        return Err(LatticeError::Degenerate);
    }
    for (i, h) in glue.iter().enumerate() {
        let q = disc_q(l, h)?;
        if !q.is_zero() {
            return Err(LatticeError::NotIsotropic(format!(
                "q{} = {q}",
                qvec_to_string(h)
            )));
        }
        for h2 in &glue[..i] {
            let b = disc_b(l, h, h2)?;
            if !b.is_zero() {
                return Err(LatticeError::NotIsotropic(format!(
                    "b({}, {}) = {b}",
                    qvec_to_string(h),
                    qvec_to_string(h2)
                )));
            }
        }
    }
    let ext = l.extend_by(glue)?;
    let det_l = l.det();
    let det_e = ext.lattice.det();
    let index_sq = (&det_l / &det_e).abs();
    if !(&det_l % &det_e).is_zero() || !ext.lattice.is_even() {
        return Err(LatticeError::Internal("overlattice determinant or parity".into()));
    }
    check_forms(l, &ext, &index_sq)?;
    Ok(ext)
}

/// Compares the value multiset of `q_{L'}` with that of `q_L` on `H^perp/H`.
fn check_forms(l: &Lattice, ext: &Embedded, index_sq: &BigInt) -> Result<(), LatticeError> {
    let dg = discriminant_group(l)?;
    let Some(all) = dg.elements(FORM_CHECK_LIMIT) else {
        return Ok(());
    };
    let in_h: Vec<&QVec> = all.iter().filter(|x| ext.contains(x)).collect();
    let h_order = in_h.len() as u64;
    if BigInt::from(h_order) * BigInt::from(h_order) != *index_sq {
        return Err(LatticeError::Internal(format!(
            "glue group has {h_order} elements but index^2 = {index_sq}"
        )));
    }
    let perp: Vec<QVec> = all
        .iter()
        .filter(|x| in_h.iter().all(|h| l.pair(x, h).is_integer()))
        .cloned()
        .collect();
    let mut expected = q_multiset(l, &perp);
    for c in expected.values_mut() {
        if *c % h_order != 0 {
            return Err(LatticeError::Internal("H-perp is not a union of H-cosets".into()));
        }
        *c /= h_order;
    }
    let dg2 = discriminant_group(&ext.lattice)?;
    let got = q_multiset(&ext.lattice, &dg2.elements(u64::MAX).expect("smaller than L*/L"));
    if got != expected {
        return Err(LatticeError::Internal(format!(
            "discriminant form mismatch: {got:?} vs {expected:?}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lattice::make_named;

    fn factors(l: &Lattice) -> Vec<i64> {
        discriminant_group(l)
            .unwrap()
            .invariant_factors
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn groups() {
        assert_eq!(factors(&make_named("A2").unwrap()), vec![3]);
        assert_eq!(factors(&make_named("D8").unwrap()), vec![2, 2]);
        assert!(factors(&make_named("E8").unwrap()).is_empty());
        assert_eq!(factors(&make_named("D5").unwrap()), vec![4]);
        assert!(matches!(
            discriminant_group(&Lattice::from_i64(&[vec![-2, 2], vec![2, -2]]).unwrap()),
            Err(LatticeError::Degenerate)
        ));
    }

    #[test]
    fn lifts_are_dual() {
        for s in ["A2", "D8", "A5+A5+A1+A1", "E7", "U(2)+A3"] {
            let l = make_named(s).unwrap();
            let g = discriminant_group(&l).unwrap();
            for x in &g.generator_lifts {
                assert!(l.in_dual(x), "{s}");
            }
            assert_eq!(g.elements(10_000).unwrap().len() as i64, l.det().abs().to_i64().unwrap());
        }
    }

    #[test]
    fn form_values() {
        let a1 = make_named("A1").unwrap();
        let h = vec![rat(1, 2)];
        assert_eq!(disc_q(&a1, &h).unwrap(), rat(3, 2));
        assert_eq!(disc_b(&a1, &h, &h).unwrap(), rat(1, 2));
        assert_eq!(disc_b(&a1, &h, &[rat(0, 1)]).unwrap(), rat(0, 1));
        assert_eq!(disc_q(&a1, &[rat(0, 1)]).unwrap(), rat(0, 1));

        let a2 = make_named("A2").unwrap();
        assert_eq!(disc_q(&a2, &[rat(1, 3), rat(2, 3)]).unwrap(), rat(4, 3));
        assert!(matches!(disc_q(&a2, &[rat(1, 2), rat(0, 1)]), Err(LatticeError::NotInDual(_))));

        let odd = Lattice::from_i64(&[vec![-1]]).unwrap();
        assert!(matches!(disc_q(&odd, &[rat(0, 1)]), Err(LatticeError::Odd)));
    }

    #[test]
    fn u2_overlattice_is_u() {
        let u2 = make_named("U(2)").unwrap();
        let ext = overlattice(&u2, &[vec![rat(1, 2), rat(0, 1)]]).unwrap();
        assert_eq!(ext.lattice.det(), BigInt::from(-1));
        assert!(ext.lattice.is_even());
        let same = overlattice(&u2, &[]).unwrap();
        assert_eq!(same.lattice.gram(), u2.gram());
    }

    #[test]
    fn d4_d4_diagonal_glue() {
        let l = make_named("D4+D4").unwrap();
        let g = discriminant_group(&make_named("D4").unwrap()).unwrap();
        let glue: Vec<QVec> = g
            .generator_lifts
            .iter()
            .map(|x| x.iter().chain(x.iter()).cloned().collect())
            .collect();
        let ext = overlattice(&l, &glue).unwrap();
        // D4+D4 has det 16; the index-4 glue gives E8
        assert_eq!(l.det(), BigInt::from(16));
        assert_eq!(ext.lattice.det(), BigInt::from(1));
        assert!(ext.lattice.is_even());
    }

    #[test]
    fn anisotropic_glue_rejected() {
        let a1 = make_named("A1").unwrap();
        assert!(matches!(
            overlattice(&a1, &[vec![rat(1, 2)]]),
            Err(LatticeError::NotIsotropic(_))
        ));
        assert!(matches!(
            overlattice(&a1, &[vec![rat(1, 3)]]),
            Err(LatticeError::NotInDual(_))
        ));
    }
}
