//! Graphs of (-2)-roots: edge multiplicity `m` between two vertices means the
//! roots pair to `m`. Vertex sets are `u128` bitsets, so graphs hold at most
//! 128 vertices.

mod automorphism;
mod classify;
mod parabolic;

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{rank_signature, snf, IntMatrix, Signature};

pub use automorphism::{automorphisms, AutGroup, Permutation};
pub use classify::{classify, recognize, Classification, DiagramType, Family};
pub use parabolic::{
    connected_parabolics, default_target_rank, join_types, maximal_parabolics, vinberg_check, ConnectedParabolic,
    ParabolicSubdiagram, VinbergReport,
};

pub type VertexSet = u128;

pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// A (-2)-curve.
    Curve,
    /// A (-1)-root `2e + b/2 + b'/2`.
    Root,
}

impl VertexKind {
    pub fn tag(self) -> i32 {
        match self {
            VertexKind::Curve => -2,
            VertexKind::Root => -1,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate edge {a} -- {b}")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("line {line}: self-loop on {label}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: unknown vertex {label}")]
    UnknownLabel { line: usize, label: String },
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(String),
    #[error("graph has {0} vertices; at most 128 are supported")]
    TooLarge(usize),
    #[error("edge multiplicity {mult} between {a} and {b} is at least 3")]
    HighMultiplicity { a: String, b: String, mult: u32 },
    #[error("vertex subset is empty or disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct RootGraph {
    name: String,
    labels: Vec<String>,
    kinds: Vec<VertexKind>,
    mult: Vec<Vec<u32>>,
    /// Neighbor bitsets over edges of any multiplicity.
    adj: Vec<VertexSet>,
    index: HashMap<String, usize>,
}

impl RootGraph {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            labels: Vec::new(),
            kinds: Vec::new(),
            mult: Vec::new(),
            adj: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, kind: VertexKind) -> Result<usize, GraphError> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        let n = self.labels.len();
        if n == MAX_VERTICES {
            return Err(GraphError::TooLarge(n + 1));
        }
        for row in &mut self.mult {
            row.push(0);
        }
        self.mult.push(vec![0; n + 1]);
        self.adj.push(0);
        self.index.insert(label.clone(), n);
        self.labels.push(label);
        self.kinds.push(kind);
        Ok(n)
    }

    /// Sets the multiplicity between two distinct vertices (0 removes it).
    pub fn set_edge(&mut self, a: usize, b: usize, m: u32) {
        assert!(a != b, "self-loop");
        self.mult[a][b] = m;
        self.mult[b][a] = m;
        if m == 0 {
            self.adj[a] &= !bit(b);
            self.adj[b] &= !bit(a);
        } else {
            self.adj[a] |= bit(b);
            self.adj[b] |= bit(a);
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn set_kind(&mut self, v: usize, kind: VertexKind) {
        self.kinds[v] = kind;
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn mult(&self, a: usize, b: usize) -> u32 {
        self.mult[a][b]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn all(&self) -> VertexSet {
        full_set(self.len())
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|v| self.adj[v].count_ones() as usize).sum::<usize>() / 2
    }

    pub fn max_mult(&self) -> u32 {
        self.mult.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Fails on the first pair with multiplicity 3 or more.
    pub fn require_low_multiplicity(&self) -> Result<(), GraphError> {
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.mult[a][b] >= 3 {
                    return Err(GraphError::HighMultiplicity {
                        a: self.labels[a].clone(),
                        b: self.labels[b].clone(),
                        mult: self.mult[a][b],
                    });
                }
            }
        }
        Ok(())
    }

    /// `-2` on the diagonal, multiplicities off it.
    pub fn gram(&self) -> IntMatrix {
        let n = self.len();
        IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(-2)
            } else {
                BigInt::from(self.mult[i][j])
            }
        })
    }

    pub fn induced_gram(&self, set: VertexSet) -> IntMatrix {
        let idx: Vec<usize> = members(set).collect();
        self.gram().principal(&idx)
    }

    pub fn is_connected(&self, set: VertexSet) -> bool {
        if set == 0 {
            return false;
        }
        let mut seen = set & set.wrapping_neg();
        loop {
            let mut next = seen;
            for v in members(seen) {
                next |= self.adj[v] & set;
            }
            if next == seen {
                return seen == set;
            }
            seen = next;
        }
    }

    /// Union of `set` and all neighbors of its members.
    pub fn closed_neighborhood(&self, set: VertexSet) -> VertexSet {
        members(set).fold(set, |acc, v| acc | self.adj[v])
    }

    pub fn induced(&self, set: VertexSet) -> RootGraph {
        let idx: Vec<usize> = members(set).collect();
        let mut g = RootGraph::new(format!("{}[sub]", self.name));
        for &v in &idx {
            g.add_vertex(self.labels[v].clone(), self.kinds[v]).expect("labels unique");
        }
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate().skip(i + 1) {
                if self.mult[a][b] > 0 {
                    g.set_edge(i, j, self.mult[a][b]);
                }
            }
        }
        g
    }

    /// Renames vertices by `perm`: vertex `v` becomes position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> RootGraph {
        let n = self.len();
        let mut inv = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut g = RootGraph::new(self.name.clone());
        for &v in &inv {
            g.add_vertex(self.labels[v].clone(), self.kinds[v]).expect("labels unique");
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.mult[a][b] > 0 {
                    g.set_edge(perm[a], perm[b], self.mult[a][b]);
                }
            }
        }
        g
    }

    pub fn set_from_labels<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Option<VertexSet> {
        labels
            .into_iter()
            .try_fold(0, |acc, l| self.index_of(l).map(|v| acc | bit(v)))
    }

    pub fn set_labels(&self, set: VertexSet) -> Vec<&str> {
        members(set).map(|v| self.labels[v].as_str()).collect()
    }

    /// Every curve/root pair has even multiplicity.
    pub fn parity_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.kinds[a] != self.kinds[b] && self.mult[a][b] % 2 == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<RootGraph, GraphError> {
        let mut g = RootGraph::new("");
        let mut named = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let syntax = |msg: String| GraphError::Syntax { line, msg };
            match toks[0] {
                "graph" => {
                    if toks.len() != 2 {
                        return Err(syntax("expected `graph <name>`".into()));
                    }
                    if named {
                        return Err(syntax("second `graph` line".into()));
                    }
                    g.name = toks[1].to_string();
                    named = true;
                }
                "vertex" => {
                    let kind = match toks.len() {
                        2 => VertexKind::Curve,
                        3 => match toks[2] {
                            "kind=-2" => VertexKind::Curve,
                            "kind=-1" => VertexKind::Root,
                            other => return Err(syntax(format!("bad kind `{other}`"))),
                        },
                        _ => return Err(syntax("expected `vertex <label> [kind=-1|-2]`".into())),
                    };
                    g.add_vertex(toks[1], kind).map_err(|e| match e {
                        GraphError::DuplicateLabel(l) => syntax(format!("duplicate vertex `{l}`")),
                        other => other,
                    })?;
                }
                "edge" => {
                    if toks.len() != 4 {
                        return Err(syntax("expected `edge <label> <label> <mult>`".into()));
                    }
                    let find = |l: &str| {
                        g.index_of(l).ok_or_else(|| GraphError::UnknownLabel {
                            line,
                            label: l.to_string(),
                        })
                    };
                    let (a, b) = (find(toks[1])?, find(toks[2])?);
                    let m: u32 = toks[3]
                        .parse()
                        .ok()
                        .filter(|&m| m >= 1)
                        .ok_or_else(|| syntax(format!("multiplicity `{}` is not an integer >= 1", toks[3])))?;
                    if a == b {
                        return Err(GraphError::SelfLoop {
                            line,
                            label: toks[1].to_string(),
                        });
                    }
                    if g.mult[a][b] != 0 {
                        return Err(GraphError::DuplicateEdge {
                            line,
                            a: toks[1].to_string(),
                            b: toks[2].to_string(),
                        });
                    }
                    g.set_edge(a, b, m);
                }
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }
        Ok(g)
    }

    pub fn load(path: &std::path::Path) -> Result<RootGraph, GraphError> {
        let text = std::fs::read_to_string(path).map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Text format accepted by [`RootGraph::parse`]; vertices in order, edges
    /// in row-major order of the upper triangle.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(s, "graph {}", self.name);
        }
        for (l, k) in self.labels.iter().zip(&self.kinds) {
            match k {
                VertexKind::Curve => {
                    let _ = writeln!(s, "vertex {l}");
                }
                VertexKind::Root => {
                    let _ = writeln!(s, "vertex {l} kind=-1");
                }
            }
        }
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.mult[a][b] > 0 {
                    let _ = writeln!(s, "edge {} {} {}", self.labels[a], self.labels[b], self.mult[a][b]);
                }
            }
        }
        s
    }

    /// Graphviz rendering: curves are circles, (-1)-roots double circles,
    /// and an edge of multiplicity `m` is drawn as `m` parallel edges.
    pub fn export_dot(&self) -> String {
        if self.is_empty() {
            return "graph G { }\n".to_string();
        }
        let mut s = String::from("graph G {\n");
        for (i, (l, k)) in self.labels.iter().zip(&self.kinds).enumerate() {
            let shape = match k {
                VertexKind::Curve => "circle",
                VertexKind::Root => "doublecircle",
            };
            let _ = writeln!(s, "  n{i} [label=\"{}\", shape={shape}];", l.replace('"', "\\\""));
        }
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                for _ in 0..self.mult[a][b] {
                    let _ = writeln!(s, "  n{a} -- n{b};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for RootGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Rank and signature of the span of the roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanInfo {
    pub rank: usize,
    pub signature: Signature,
}

pub fn span_check(g: &RootGraph) -> SpanInfo {
    let sig = rank_signature(&g.gram().to_rational()).expect("graph Gram is symmetric");
    SpanInfo {
        rank: sig.rank(),
        signature: sig,
    }
}

/// Determinant of the lattice generated by the roots, taken modulo its
/// radical: `(-1)^neg` times the product of the nonzero invariant factors.
pub fn span_det(g: &RootGraph) -> Result<BigInt, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let gram = g.gram();
    let r = snf(&gram);
    if r.rank() == 0 {
        return Err(GraphError::Empty);
    }
    let sig = rank_signature(&gram.to_rational()).expect("symmetric");
    let mut d = r.nonzero_product();
    if sig.negative % 2 == 1 {
        d = -d;
    }
    debug_assert!(d.is_positive() || d.is_negative());
    Ok(d)
}

/// `|d| = 2^l` with `d < 0`.
pub fn is_minus_power_of_two(d: &BigInt) -> Option<u64> {
    if !d.is_negative() {
        return None;
    }
    let a = d.abs();
    let l = a.trailing_zeros()?;
    ((&a >> l) == BigInt::one()).then_some(l)
}

pub fn bit(v: usize) -> VertexSet {
    1u128 << v
}

pub fn full_set(n: usize) -> VertexSet {
    if n >= 128 {
        !0
    } else {
        (1u128 << n) - 1
    }
}

pub fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut s = set;
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        Some(v)
    })
}

pub(crate) fn first(set: VertexSet) -> usize {
    set.trailing_zeros() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> RootGraph {
        let mut g = RootGraph::new("path");
        for i in 0..n {
            g.add_vertex(format!("v{i}"), VertexKind::Curve).unwrap();
        }
        for i in 1..n {
            g.set_edge(i - 1, i, 1);
        }
        g
    }

    #[test]
    fn parse_and_round_trip() {
        let text = "# a comment\ngraph demo\nvertex a\nvertex b kind=-1\nvertex c kind=-2 # trailing\nedge a b 2\nedge b c 1\n";
        let g = RootGraph::parse(text).unwrap();
        assert_eq!(g.name(), "demo");
        assert_eq!(g.len(), 3);
        assert_eq!(g.kind(1), VertexKind::Root);
        assert_eq!(g.mult(0, 1), 2);
        let again = RootGraph::parse(&g.serialize()).unwrap();
        assert_eq!(again, g);
        assert_eq!(again.serialize(), g.serialize());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = RootGraph::parse("vertex a\nedge a a 1\n").unwrap_err();
        assert_eq!(e, GraphError::SelfLoop { line: 2, label: "a".into() });
        let e = RootGraph::parse("vertex a\nvertex b\nedge a b 1\nedge b a 1\n").unwrap_err();
        assert!(matches!(e, GraphError::DuplicateEdge { line: 4, .. }));
        let e = RootGraph::parse("vertex a\nedge a z 1\n").unwrap_err();
        assert!(matches!(e, GraphError::UnknownLabel { line: 2, .. }));
        let e = RootGraph::parse("vertex a\nvertex a\n").unwrap_err();
        assert!(matches!(e, GraphError::Syntax { line: 2, .. }));
        for bad in ["vertex", "vertex a kind=-3", "edge a", "frob", "vertex a\nvertex b\nedge a b 0", "graph"] {
            assert!(RootGraph::parse(bad).is_err(), "{bad}");
        }
        let g = RootGraph::parse("vertex only\n").unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn dot_output() {
        assert_eq!(RootGraph::new("x").export_dot().trim(), "graph G { }");
        let g = RootGraph::parse("vertex a\nvertex b kind=-1\nedge a b 2\n").unwrap();
        let dot = g.export_dot();
        assert_eq!(dot.matches("n0 -- n1;").count(), 2);
        assert!(dot.contains("shape=doublecircle"));
        assert!(dot.contains("shape=circle"));
    }

    #[test]
    fn span_of_small_graphs() {
        let one = path(1);
        let s = span_check(&one);
        assert_eq!((s.rank, s.signature.positive, s.signature.negative), (1, 0, 1));
        assert_eq!(span_det(&one).unwrap(), BigInt::from(-2));
        assert_eq!(span_det(&path(4)).unwrap(), BigInt::from(5));
        assert!(span_det(&RootGraph::new("e")).is_err());
        // triangle: A2 modulo the radical
        let mut tri = path(3);
        tri.set_edge(0, 2, 1);
        assert_eq!(span_det(&tri).unwrap(), BigInt::from(3));
    }

    #[test]
    fn minus_power_of_two() {
        assert_eq!(is_minus_power_of_two(&BigInt::from(-1)), Some(0));
        assert_eq!(is_minus_power_of_two(&BigInt::from(-16)), Some(4));
        assert_eq!(is_minus_power_of_two(&BigInt::from(-12)), None);
        assert_eq!(is_minus_power_of_two(&BigInt::from(4)), None);
    }

    #[test]
    fn connectivity() {
        let g = path(4);
        assert!(g.is_connected(0b1111));
        assert!(!g.is_connected(0b1011));
        assert!(!g.is_connected(0));
        assert_eq!(g.closed_neighborhood(0b1), 0b11);
    }
}
