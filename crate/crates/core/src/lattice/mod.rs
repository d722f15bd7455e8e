//! Integral lattices and their invariants: determinant, discriminant group and
//! forms, overlattices, orthogonal complements, reflections and the mod-2
//! quadratic forms on `L/2L`.

mod discriminant;
mod mod2;
mod named;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{
    self, common_denominator, int_vec_to_rat, integer_kernel, rank_signature, rational_row_basis,
    ArithError, IntMatrix, Signature,
};

pub use discriminant::{disc_b, disc_q, discriminant_group, overlattice, DiscriminantGroup};
pub use mod2::{half_overlattice, mod2_form, mod2_nullity, Mod2Form, Mod2Nullity, RInvariant};
pub use named::{a_gram, d_gram, e_gram, make_named, u_gram};

/// A vector in `L ⊗ Q`, in coordinates of the lattice basis.
pub type QVec = Vec<BigRational>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("malformed lattice spec {0}")]
    Spec(String),
    #[error("invalid index: {0}")]
    Index(String),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate Gram matrix")]
    Degenerate,
    #[error("lattice is odd; the quadratic form is undefined")]
    Odd,
    #[error("vector {0} is not in the dual lattice")]
    NotInDual(String),
    #[error("glue is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("non-integral pairing: {0}")]
    NonIntegral(String),
    #[error("reflection vector has norm {0}, expected -2")]
    WrongNorm(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("rank {0} exceeds the supported mod-2 dimension")]
    TooLarge(usize),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("gram file line {line}: {msg}")]
    GramFile { line: usize, msg: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A free Z-module with a symmetric integral bilinear form given by its Gram
/// matrix in a fixed basis. Degenerate forms are allowed as values; the
/// operations that need non-degeneracy check for it.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    name: Option<String>,
}

impl Lattice {
    pub fn new(gram: IntMatrix, name: Option<String>) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Self { gram, name })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_i64_rows(rows)?, None)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("Gram is square")
    }

    pub fn signature(&self) -> Signature {
        rank_signature(&self.gram.to_rational()).expect("Gram is symmetric")
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Lattice {
            gram: self.gram.direct_sum(&other.gram),
            name,
        }
    }

    /// `L(m)`: the same module with the form multiplied by `m`.
    pub fn rescale(&self, m: i64) -> Lattice {
        Lattice {
            gram: self.gram.scale(&BigInt::from(m)),
            name: self.name.as_ref().map(|n| format!("({n})({m})")),
        }
    }

    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[BigRational]) -> BigRational {
        self.pair(x, x)
    }

    pub fn in_dual(&self, x: &[BigRational]) -> bool {
        x.len() == self.rank() && self.gram.mul_rat_vec(x).iter().all(|c| c.is_integer())
    }

    fn check_dim(&self, x: &[BigRational]) -> Result<(), LatticeError> {
        if x.len() != self.rank() {
            return Err(LatticeError::Dimension {
                expected: self.rank(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Reflection in a (-2)-vector: `x -> x + <x, delta> delta`.
    pub fn reflect(&self, delta: &[BigRational], x: &[BigRational]) -> Result<QVec, LatticeError> {
        self.check_dim(delta)?;
        self.check_dim(x)?;
        let n = self.norm(delta);
        if n != BigRational::from_integer(BigInt::from(-2)) {
            return Err(LatticeError::WrongNorm(n.to_string()));
        }
        let c = self.pair(x, delta);
        Ok(x.iter().zip(delta).map(|(a, d)| a + &c * d).collect())
    }

    /// Gram matrix of the vectors `basis` (rows, in this lattice's coordinates).
    pub fn restrict(&self, basis: &[QVec]) -> Result<IntMatrix, LatticeError> {
        let k = basis.len();
        let mut g = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..=i {
                let v = self.pair(&basis[i], &basis[j]);
                if !v.is_integer() {
                    return Err(LatticeError::NonIntegral(format!(
                        "basis vectors {i},{j} pair to {v}"
                    )));
                }
                g[(i, j)] = v.to_integer();
                g[(j, i)] = g[(i, j)].clone();
            }
        }
        Ok(g)
    }

    /// Saturated orthogonal complement of `vectors` (rational, in this
    /// lattice's coordinates). An empty list returns the lattice itself.
    pub fn orth_complement(&self, vectors: &[QVec]) -> Result<Embedded, LatticeError> {
        for v in vectors {
            self.check_dim(v)?;
        }
        let n = self.rank();
        if vectors.is_empty() {
            return Ok(Embedded {
                lattice: self.clone(),
                basis: (0..n).map(|i| unit(n, i)).collect(),
            });
        }
        // row k: (G v_k)^T scaled to integers
        let rows: Vec<QVec> = vectors.iter().map(|v| self.gram.mul_rat_vec(v)).collect();
        let w = IntMatrix::from_fn(rows.len(), n, |i, j| {
            let d = common_denominator(&rows[i]);
            (&rows[i][j] * BigRational::from_integer(d)).to_integer()
        });
        let basis: Vec<QVec> = integer_kernel(&w).iter().map(|k| int_vec_to_rat(k)).collect();
        let gram = self.restrict(&basis)?;
        Ok(Embedded {
            lattice: Lattice::new(gram, None)?,
            basis,
        })
    }

    /// Lattice spanned by `self` and rational `extra` vectors, with a reduced
    /// basis. The resulting form may be non-integral; that is checked.
    pub fn extend_by(&self, extra: &[QVec]) -> Result<Embedded, LatticeError> {
        let n = self.rank();
        let mut gens: Vec<QVec> = (0..n).map(|i| unit(n, i)).collect();
        for v in extra {
            self.check_dim(v)?;
            gens.push(v.clone());
        }
        let basis = rational_row_basis(&gens);
        let gram = self.restrict(&basis)?;
        Ok(Embedded {
            lattice: Lattice::new(gram, None)?,
            basis,
        })
    }

    /// Parses the text format: first line `rank N`, then `N*N` whitespace
    /// separated integers.
    pub fn parse_gram_file(text: &str) -> Result<Lattice, LatticeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or(LatticeError::GramFile {
            line: 1,
            msg: "missing `rank N` header".into(),
        })?;
        let n: usize = header
            .strip_prefix("rank")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| LatticeError::GramFile {
                line: ln,
                msg: format!("expected `rank N`, found `{header}`"),
            })?;
        let mut entries = Vec::with_capacity(n * n);
        let mut last = ln;
        for (ln, l) in lines {
            last = ln;
            for tok in l.split_whitespace() {
                let v: BigInt = tok.parse().map_err(|_| LatticeError::GramFile {
                    line: ln,
                    msg: format!("`{tok}` is not an integer"),
                })?;
                entries.push(v);
            }
        }
        if entries.len() != n * n {
            return Err(LatticeError::GramFile {
                line: last,
                msg: format!("expected {} entries, found {}", n * n, entries.len()),
            });
        }
        Lattice::new(IntMatrix::from_vec(n, n, entries)?, None)
    }

    pub fn to_gram_file(&self) -> String {
        format!("rank {}\n{}", self.rank(), self.gram)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("gram", &self.gram)
            .finish()
    }
}

/// A lattice together with its basis expressed in some ambient `Q`-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedded {
    pub lattice: Lattice,
    /// Rows: basis vectors in ambient coordinates.
    pub basis: Vec<QVec>,
}

impl Embedded {
    /// Whether an ambient vector lies in this lattice.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        match arith::coordinates(&self.basis, v) {
            Some(c) => c.iter().all(|x| x.is_integer()),
            None => false,
        }
    }
}

pub(crate) fn unit(n: usize, i: usize) -> QVec {
    (0..n)
        .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
        .collect()
}

pub fn qvec_to_string(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Parses `a,b/c,...`, optionally in parentheses.
pub fn parse_qvec(s: &str) -> Result<QVec, LatticeError> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigRational>()
                .map_err(|_| LatticeError::Spec(format!("`{t}` is not a rational number")))
        })
        .collect()
}

/// Reduces a rational into `[0, m)`.
pub(crate) fn reduce_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn qv(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn qvec_text_round_trip() {
        let v = parse_qvec("(1/2, -3,0)").unwrap();
        assert_eq!(v, vec![rat(1, 2), rat(-3, 1), rat(0, 1)]);
        assert_eq!(qvec_to_string(&v), "(1/2,-3,0)");
        assert!(parse_qvec("1,x").is_err());
    }

    #[test]
    fn dets() {
        assert_eq!(make_named("E8").unwrap().det(), BigInt::from(1));
        assert_eq!(make_named("E10").unwrap().det(), BigInt::from(-1));
        assert_eq!(make_named("D8").unwrap().det(), BigInt::from(4));
        let e10 = make_named("E10").unwrap();
        let s = e10.signature();
        assert_eq!((s.positive, s.negative, s.zero), (1, 9, 0));
    }

    #[test]
    fn reflection_examples() {
        let a2 = make_named("A2").unwrap();
        let (e1, e2) = (qv(&[1, 0]), qv(&[0, 1]));
        assert_eq!(a2.reflect(&e2, &e1).unwrap(), qv(&[1, 1]));
        assert_eq!(a2.reflect(&e1, &e1).unwrap(), qv(&[-1, 0]));
        let a1a1 = make_named("A1+A1").unwrap();
        assert_eq!(a1a1.reflect(&qv(&[1, 0]), &qv(&[0, 3])).unwrap(), qv(&[0, 3]));
        let u = make_named("U").unwrap();
        assert!(matches!(u.reflect(&qv(&[1, 0]), &qv(&[0, 1])), Err(LatticeError::WrongNorm(_))));
    }

    #[test]
    fn orth_complement_examples() {
        let u = make_named("U").unwrap();
        let c = u.orth_complement(&[qv(&[1, 0])]).unwrap();
        assert_eq!(c.lattice.rank(), 1);
        assert!(c.lattice.gram()[(0, 0)].is_zero());

        // E8 block of E10 = U + E8: complement is U
        let e10 = make_named("E10").unwrap();
        let e8: Vec<QVec> = (2..10).map(|i| unit(10, i)).collect();
        let c = e10.orth_complement(&e8).unwrap();
        assert_eq!(c.lattice.rank(), 2);
        assert_eq!(c.lattice.det(), BigInt::from(-1));
        assert!(c.lattice.is_even());

        let same = e10.orth_complement(&[]).unwrap();
        assert_eq!(same.lattice, e10);
    }

    #[test]
    fn gram_file_round_trip_and_errors() {
        let d4 = make_named("D4").unwrap();
        let text = d4.to_gram_file();
        let back = Lattice::parse_gram_file(&text).unwrap();
        assert_eq!(back.gram(), d4.gram());
        assert!(matches!(
            Lattice::parse_gram_file("rank 2\n1 2\n3"),
            Err(LatticeError::GramFile { .. })
        ));
        assert!(matches!(
            Lattice::parse_gram_file("rank 2\n0 1\n2 0"),
            Err(LatticeError::NotSymmetric)
        ));
        assert!(Lattice::parse_gram_file("dim 2").is_err());
        assert!(Lattice::parse_gram_file("rank 1\nx").is_err());
    }
}
