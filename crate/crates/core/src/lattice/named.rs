//! Root lattices and hyperbolic blocks by name, e.g. `"A5+A5+A1+A1"`,
//! `"U(2)+E8"`, `"E10"`.

use num_bigint::BigInt;

use super::{Lattice, LatticeError};
use crate::arith::IntMatrix;

/// Negative-definite Cartan Gram from an edge list on `n` vertices.
fn cartan(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = BigInt::from(-2);
    }
    for &(a, b) in edges {
        g[(a, b)] = BigInt::from(1);
        g[(b, a)] = BigInt::from(1);
    }
    g
}

pub fn a_gram(n: usize) -> IntMatrix {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    cartan(n, &edges)
}

pub fn d_gram(n: usize) -> IntMatrix {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    cartan(n, &edges)
}

/// Bourbaki numbering: 1-3-4-5-...-n with 2 attached to 4.
pub fn e_gram(n: usize) -> IntMatrix {
    let mut edges = vec![(0, 2), (1, 3)];
    edges.extend((3..n).map(|i| (i - 1, i)));
    cartan(n, &edges)
}

pub fn u_gram() -> IntMatrix {
    IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]).expect("2x2")
}

fn parse_term(term: &str) -> Result<Lattice, LatticeError> {
    let malformed = |why: &str| LatticeError::Spec(format!("`{term}`: {why}"));
    let (body, scale) = match term.find('(') {
        Some(p) => {
            let rest = &term[p + 1..];
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| malformed("unclosed rescale"))?;
            let m: i64 = inner
                .trim()
                .parse()
                .map_err(|_| malformed("rescale factor is not an integer"))?;
            if m == 0 {
                return Err(malformed("rescale by zero"));
            }
            (term[..p].trim(), Some(m))
        }
        None => (term, None),
    };
    let mut chars = body.chars();
    let family = chars.next().ok_or_else(|| malformed("empty term"))?;
    let digits = chars.as_str();
    let index = if digits.is_empty() {
        None
    } else {
        Some(
            digits
                .parse::<usize>()
                .map_err(|_| malformed("bad index"))?,
        )
    };
    let gram = match (family, index) {
        ('U', None) => u_gram(),
        ('A', Some(n)) if n >= 1 => a_gram(n),
        ('D', Some(n)) if n >= 4 => d_gram(n),
        ('E', Some(10)) => u_gram().direct_sum(&e_gram(8)),
        ('E', Some(k)) if (6..=8).contains(&k) => e_gram(k),
        ('A', _) => return Err(LatticeError::Index(format!("{body}: A_m needs m >= 1"))),
        ('D', _) => return Err(LatticeError::Index(format!("{body}: D_n needs n >= 4"))),
        ('E', _) => return Err(LatticeError::Index(format!("{body}: E_k needs k in {{6,7,8,10}}"))),
        ('U', Some(_)) => return Err(malformed("U takes no index")),
        _ => return Err(malformed("unknown lattice name")),
    };
    let gram = match scale {
        Some(m) => gram.scale(&BigInt::from(m)),
        None => gram,
    };
    Lattice::new(gram, Some(term.to_string()))
}

/// Parses a `+`-joined lattice spec into its block-diagonal Gram.
pub fn make_named(spec: &str) -> Result<Lattice, LatticeError> {
    let terms: Vec<&str> = spec.split('+').map(str::trim).collect();
    if terms.iter().any(|t| t.is_empty()) {
        return Err(LatticeError::Spec(format!("`{spec}`: empty term")));
    }
    let mut gram = IntMatrix::zeros(0, 0);
    for t in terms {
        gram = gram.direct_sum(parse_term(t)?.gram());
    }
    Lattice::new(gram, Some(spec.trim().to_string()))
}
