//! Intersection models on blow-ups of `P1 x P1`: the basis is two ruling
//! classes `h_u, h_v` (`h_u.h_v = 1`, both isotropic) followed by
//! exceptional classes `e` with `e.e = -1`. Bidegree `(a, b)` is the class
//! `a h_u + b h_v`, so `(a, b).(a', b') = ab' + a'b`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::graphs::{duad_label, grid_label, perm_label, s4_elements, synthemes, syntheme_label, triad_label};
use super::CatalogError;
use crate::arith::{common_denominator, integer_kernel, rat, rational_row_basis, IntMatrix};
use crate::lattice::{qvec_to_string, Embedded, Lattice, QVec};
use crate::rootgraph::{RootGraph, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupModel {
    pub name: String,
    pub ambient: Lattice,
    pub basis_labels: Vec<String>,
    pub boundaries: Vec<(String, QVec)>,
    /// Root classes keyed by graph vertex label, in graph order.
    pub roots: Vec<(String, QVec)>,
}

/// Gram of `U + <-1>^m` on `h_u, h_v, e_1, ..., e_m`.
pub fn blowup_ambient(m: usize) -> Lattice {
    let n = m + 2;
    let g = IntMatrix::from_fn(n, n, |i, j| match (i, j) {
        (0, 1) | (1, 0) => BigInt::one(),
        (i, j) if i == j && i >= 2 => -BigInt::one(),
        _ => BigInt::zero(),
    });
    Lattice::new(g, None).expect("symmetric")
}

/// Bidegree `(a, b)` minus the exceptional classes at `points` (0-based).
fn class(m: usize, a: i64, b: i64, points: &[usize]) -> QVec {
    let mut v = vec![rat(0, 1); m + 2];
    v[0] = rat(a, 1);
    v[1] = rat(b, 1);
    for &p in points {
        v[2 + p] -= rat(1, 1);
    }
    v
}

/// `2e + b/2 + b'/2`.
fn minus_one_root(e: usize, b1: &[BigRational], b2: &[BigRational]) -> QVec {
    let half = rat(1, 2);
    let mut v: QVec = b1.iter().zip(b2).map(|(x, y)| (x + y) * &half).collect();
    v[2 + e] += rat(2, 1);
    v
}

impl BlowupModel {
    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        self.ambient.pair(x, y)
    }

    pub fn root_class(&self, label: &str) -> Option<&QVec> {
        self.roots.iter().find(|(l, _)| l == label).map(|(_, v)| v)
    }

    /// If `v = 2e + b_i/2 + b_j/2` for an exceptional class `e` and distinct
    /// boundaries, the indices `(e, i, j)`.
    pub fn half_boundary_form(&self, v: &[BigRational]) -> Option<(usize, usize, usize)> {
        let nb = self.boundaries.len();
        for i in 0..nb {
            for j in i + 1..nb {
                let w: QVec = v
                    .iter()
                    .zip(&self.boundaries[i].1)
                    .zip(&self.boundaries[j].1)
                    .map(|((x, a), b)| x - (a + b) * rat(1, 2))
                    .collect();
                if !w[0].is_zero() || !w[1].is_zero() {
                    continue;
                }
                let nonzero: Vec<usize> = (2..w.len()).filter(|&k| !w[k].is_zero()).collect();
                if let [k] = nonzero.as_slice() {
                    if w[*k] == rat(2, 1) {
                        return Some((k - 2, i, j));
                    }
                }
            }
        }
        None
    }

    /// Boundary norms `-4`, boundaries pairwise orthogonal, roots of norm
    /// `-2` orthogonal to every boundary.
    pub fn check(&self) -> Result<(), CatalogError> {
        let bad = |msg: String| Err(CatalogError::Inconsistent(format!("{}: {msg}", self.name)));
        let dim = self.ambient.rank();
        for (l, v) in self.boundaries.iter().chain(&self.roots) {
            if v.len() != dim {
                return bad(format!("class {l} has {} coordinates", v.len()));
            }
        }
        for (i, (l, b)) in self.boundaries.iter().enumerate() {
            if self.pair(b, b) != rat(-4, 1) {
                return bad(format!("{l}^2 = {}", self.pair(b, b)));
            }
            for (l2, b2) in &self.boundaries[..i] {
                if !self.pair(b, b2).is_zero() {
                    return bad(format!("{l}.{l2} = {}", self.pair(b, b2)));
                }
            }
        }
        for (l, r) in &self.roots {
            if self.pair(r, r) != rat(-2, 1) {
                return bad(format!("{l}^2 = {}", self.pair(r, r)));
            }
            for (lb, b) in &self.boundaries {
                if !self.pair(r, b).is_zero() {
                    return bad(format!("{l}.{lb} = {}", self.pair(r, b)));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "model {}", self.name);
        let _ = writeln!(s, "basis {}", self.basis_labels.join(" "));
        for (l, v) in &self.boundaries {
            let _ = writeln!(s, "boundary {l} {}", qvec_to_string(v));
        }
        for (l, v) in &self.roots {
            let _ = writeln!(s, "root {l} {}", qvec_to_string(v));
        }
        s
    }
}

/// Points of the ten-point configuration on each `(1,1)`-curve, 1-based.
const MI_DUAD_POINTS: [((u8, u8), [usize; 4]); 15] = [
    ((1, 2), [4, 8, 9, 10]),
    ((1, 3), [2, 3, 4, 7]),
    ((1, 4), [1, 2, 5, 8]),
    ((1, 5), [3, 5, 6, 9]),
    ((1, 6), [1, 6, 7, 10]),
    ((2, 3), [1, 4, 5, 6]),
    ((2, 4), [3, 6, 7, 8]),
    ((2, 5), [1, 2, 7, 9]),
    ((2, 6), [2, 3, 5, 10]),
    ((3, 4), [2, 6, 9, 10]),
    ((3, 5), [1, 3, 8, 10]),
    ((3, 6), [5, 7, 8, 9]),
    ((4, 5), [4, 5, 7, 10]),
    ((4, 6), [1, 3, 4, 9]),
    ((5, 6), [2, 4, 6, 8]),
];

const MI_SYNTHEME_POINTS: [(&str, [usize; 4]); 15] = [
    ("s:12.34.56", [1, 3, 5, 7]),
    ("s:12.35.46", [2, 5, 6, 7]),
    ("s:12.36.45", [1, 2, 3, 6]),
    ("s:13.24.56", [1, 5, 9, 10]),
    ("s:13.25.46", [5, 6, 8, 10]),
    ("s:13.26.45", [1, 6, 8, 9]),
    ("s:14.23.56", [3, 7, 9, 10]),
    ("s:14.25.36", [3, 4, 6, 10]),
    ("s:14.26.35", [4, 6, 7, 9]),
    ("s:15.23.46", [2, 7, 8, 10]),
    ("s:15.24.36", [1, 2, 4, 10]),
    ("s:15.26.34", [1, 4, 7, 8]),
    ("s:16.23.45", [2, 3, 8, 9]),
    ("s:16.24.35", [2, 4, 5, 9]),
    ("s:16.25.34", [3, 4, 5, 8]),
];

/// Exceptional curve carrying each triad's (-1)-root.
const MI_TRIAD_POINT: [([u8; 3], usize); 10] = [
    ([1, 2, 3], 4),
    ([1, 2, 4], 8),
    ([1, 2, 5], 9),
    ([1, 2, 6], 10),
    ([1, 3, 4], 2),
    ([1, 3, 5], 3),
    ([1, 3, 6], 7),
    ([1, 4, 5], 5),
    ([1, 4, 6], 1),
    ([1, 5, 6], 6),
];

fn zero_based(ps: &[usize]) -> Vec<usize> {
    ps.iter().map(|p| p - 1).collect()
}

/// Ten points on `P1 x P1`, two boundary curves of bidegrees `(1,3)` and
/// `(3,1)` through all of them.
pub fn model_mi() -> Result<BlowupModel, CatalogError> {
    let m = 10;
    let all: Vec<usize> = (0..m).collect();
    let b = class(m, 1, 3, &all);
    let b2 = class(m, 3, 1, &all);
    let mut roots = Vec::new();
    for (d, ps) in MI_DUAD_POINTS {
        roots.push((duad_label(d), class(m, 1, 1, &zero_based(&ps))));
    }
    let by_label: HashMap<&str, &[usize; 4]> = MI_SYNTHEME_POINTS.iter().map(|(l, p)| (*l, p)).collect();
    for s in synthemes() {
        let l = syntheme_label(&s);
        let ps = by_label
            .get(l.as_str())
            .ok_or_else(|| CatalogError::Inconsistent(format!("MI: no points for {l}")))?;
        roots.push((l, class(m, 1, 1, &zero_based(&ps[..]))));
    }
    for (t, p) in MI_TRIAD_POINT {
        roots.push((triad_label(t), minus_one_root(p - 1, &b, &b2)));
    }
    let model = BlowupModel {
        name: "MI".into(),
        ambient: blowup_ambient(m),
        basis_labels: basis_labels((1..=m).map(|i| i.to_string())),
        boundaries: vec![("B".into(), b), ("B'".into(), b2)],
        roots,
    };
    model.check()?;
    Ok(model)
}

fn basis_labels(exceptional: impl Iterator<Item = String>) -> Vec<String> {
    ["h_u".to_string(), "h_v".to_string()]
        .into_iter()
        .chain(exceptional.map(|s| format!("e{s}")))
        .collect()
}

/// Coordinates `(u0:u1)` of the four `F3`-points of `P1`.
const F3_POINTS: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

/// Coefficients of `u0v0, u0v1, u1v0, u1v1` in the `(1,1)`-curve of each
/// permutation.
const MII_EQUATIONS: [(&str, [i64; 4]); 24] = [
    ("id", [0, 1, -1, 0]),
    ("(12)(34)", [1, 0, 0, 1]),
    ("(13)(24)", [1, -1, -1, -1]),
    ("(14)(23)", [1, 1, 1, -1]),
    ("(142)", [1, 1, 0, 1]),
    ("(123)", [1, 0, -1, 1]),
    ("(134)", [1, -1, 1, 0]),
    ("(243)", [0, 1, -1, -1]),
    ("(132)", [1, -1, 0, 1]),
    ("(143)", [1, 1, -1, 0]),
    ("(124)", [1, 0, 1, 1]),
    ("(234)", [0, 1, -1, 1]),
    ("(12)", [1, 0, 0, -1]),
    ("(34)", [0, 1, 1, 0]),
    ("(1423)", [1, 1, -1, 1]),
    ("(1324)", [1, -1, 1, 1]),
    ("(13)", [1, -1, -1, 0]),
    ("(24)", [0, 1, 1, 1]),
    ("(1432)", [1, 1, 0, -1]),
    ("(1234)", [1, 0, 1, -1]),
    ("(14)", [1, 1, 1, 0]),
    ("(23)", [0, 1, 1, -1]),
    ("(1342)", [1, -1, 0, -1]),
    ("(1243)", [1, 0, -1, -1]),
];

/// `F3`-points `(p_i, p_j)` (1-based) on the curve with coefficients `c`.
pub fn f3_incidence(c: [i64; 4]) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for (i, u) in F3_POINTS.iter().enumerate() {
        for (j, v) in F3_POINTS.iter().enumerate() {
            let val = c[0] * u.0 * v.0 + c[1] * u.0 * v.1 + c[2] * u.1 * v.0 + c[3] * u.1 * v.1;
            if val.rem_euclid(3) == 0 {
                out.push((i as u8 + 1, j as u8 + 1));
            }
        }
    }
    out
}

fn cell(i: u8, j: u8) -> usize {
    (i as usize - 1) * 4 + (j as usize - 1)
}

/// The sixteen `F3`-points of `P1 x P1`, boundaries the eight ruling lines
/// through them.
pub fn model_mii() -> Result<BlowupModel, CatalogError> {
    let m = 16;
    let row = |i: u8| class(m, 1, 0, &(1..=4).map(|j| cell(i, j)).collect::<Vec<_>>());
    let col = |j: u8| class(m, 0, 1, &(1..=4).map(|i| cell(i, j)).collect::<Vec<_>>());
    let mut boundaries = Vec::new();
    for i in 1..=4 {
        boundaries.push((format!("B{i}"), row(i)));
    }
    for j in 1..=4 {
        boundaries.push((format!("B'{j}"), col(j)));
    }
    let mut roots = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            roots.push((grid_label(i, j), minus_one_root(cell(i, j), &row(i), &col(j))));
        }
    }
    let eqs: HashMap<&str, [i64; 4]> = MII_EQUATIONS.iter().copied().collect();
    for (name, _) in s4_elements() {
        let inc = f3_incidence(eqs[name]);
        if inc.len() != 4 {
            return Err(CatalogError::Inconsistent(format!(
                "MII: curve of {name} meets {} grid points",
                inc.len()
            )));
        }
        let pts: Vec<usize> = inc.iter().map(|&(i, j)| cell(i, j)).collect();
        roots.push((perm_label(name), class(m, 1, 1, &pts)));
    }
    let model = BlowupModel {
        name: "MII".into(),
        ambient: blowup_ambient(m),
        basis_labels: basis_labels((1..=4).flat_map(|i| (1..=4).map(move |j| format!("{i}{j}")))),
        boundaries,
        roots,
    };
    model.check()?;
    Ok(model)
}

pub fn by_name(name: &str) -> Result<BlowupModel, CatalogError> {
    match name {
        "MI" => model_mi(),
        "MII" => model_mii(),
        other => Err(CatalogError::UnknownName(format!("no blow-up model for `{other}`"))),
    }
}

/// Orthogonal complement of the boundaries inside the module spanned by the
/// ambient lattice and the half-boundary classes.
pub fn coble_mukai(model: &BlowupModel) -> Result<Embedded, CatalogError> {
    let n = model.ambient.rank();
    let mut gens: Vec<QVec> = (0..n).map(|i| (0..n).map(|j| rat((i == j) as i64, 1)).collect()).collect();
    for (_, b) in &model.boundaries {
        gens.push(b.iter().map(|x| x * rat(1, 2)).collect());
    }
    let module = rational_row_basis(&gens);
    if model.boundaries.is_empty() {
        return Ok(Embedded {
            lattice: model.ambient.clone(),
            basis: module,
        });
    }
    // w[i][k] = module_k . beta_i, rows scaled to integers
    let rows: Vec<QVec> = model
        .boundaries
        .iter()
        .map(|(_, b)| module.iter().map(|v| model.pair(v, b)).collect())
        .collect();
    let w = IntMatrix::from_fn(rows.len(), module.len(), |i, k| {
        let d = common_denominator(&rows[i]);
        (&rows[i][k] * BigRational::from_integer(d)).to_integer()
    });
    let basis: Vec<QVec> = integer_kernel(&w)
        .iter()
        .map(|c| {
            (0..n)
                .map(|j| {
                    c.iter()
                        .zip(&module)
                        .fold(rat(0, 1), |acc, (ck, v)| acc + BigRational::from_integer(ck.clone()) * &v[j])
                })
                .collect()
        })
        .collect();
    let gram = model.ambient.restrict(&basis)?;
    Ok(Embedded {
        lattice: Lattice::new(gram, Some(format!("CM({})", model.name)))?,
        basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMismatch {
    pub a: String,
    pub b: String,
    pub graph: BigInt,
    pub model: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub pass: bool,
    pub vertices: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<PairMismatch>,
    /// Missing classes, wrong norms, boundary pairings and kind disagreements.
    pub issues: Vec<String>,
}

/// Compares the pairing matrix of the model's root classes with the Gram of
/// `graph`, and each vertex kind with the shape of its class.
pub fn verify_realization(graph: &RootGraph, model: &BlowupModel) -> RealizationReport {
    let mut issues = Vec::new();
    let mut classes: Vec<Option<&QVec>> = Vec::with_capacity(graph.len());
    for (v, label) in graph.labels().iter().enumerate() {
        let Some(c) = model.root_class(label) else {
            issues.push(format!("{label}: no class in the model"));
            classes.push(None);
            continue;
        };
        classes.push(Some(c));
        for (lb, b) in &model.boundaries {
            let p = model.pair(c, b);
            if !p.is_zero() {
                issues.push(format!("{label}.{lb} = {p}"));
            }
        }
        let is_root_form = model.half_boundary_form(c).is_some();
        match (graph.kind(v), is_root_form) {
            (VertexKind::Root, false) => issues.push(format!("{label}: (-1)-root vertex but class is not 2e+b/2+b'/2")),
            (VertexKind::Curve, true) => issues.push(format!("{label}: curve vertex but class is 2e+b/2+b'/2")),
            _ => {}
        }
    }
    for (l, _) in &model.roots {
        if graph.index_of(l).is_none() {
            issues.push(format!("{l}: class without a vertex"));
        }
    }
    let gram = graph.gram();
    let mut mismatches = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..graph.len() {
        for b in a..graph.len() {
            let (Some(x), Some(y)) = (classes[a], classes[b]) else {
                continue;
            };
            pairs_checked += 1;
            let p = model.pair(x, y);
            if p != BigRational::from_integer(gram[(a, b)].clone()) {
                mismatches.push(PairMismatch {
                    a: graph.label(a).to_string(),
                    b: graph.label(b).to_string(),
                    graph: gram[(a, b)].clone(),
                    model: p,
                });
            }
        }
    }
    RealizationReport {
        pass: issues.is_empty() && mismatches.is_empty(),
        vertices: graph.len(),
        pairs_checked,
        mismatches,
        issues,
    }
}

impl RealizationReport {
    pub fn summary(&self) -> String {
        if self.pass {
            return format!("pass: {} vertices, {} pairs", self.vertices, self.pairs_checked);
        }
        let mut s = String::from("fail");
        for m in &self.mismatches {
            let _ = write!(s, "; {}.{}: graph {} model {}", m.a, m.b, m.graph, m.model);
        }
        for i in &self.issues {
            let _ = write!(s, "; {i}");
        }
        s
    }
}

/// Largest `k` with `p^k | d`, for `d != 0`.
pub fn valuation(d: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut d = d.abs();
    let mut k = 0;
    if d.is_zero() {
        return 0;
    }
    while (&d % &p).is_zero() {
        d /= &p;
        k += 1;
    }
    k
}
