//! Built-in dual graphs.

use crate::rootgraph::{RootGraph, VertexKind};

fn add(g: &mut RootGraph, label: impl Into<String>, kind: VertexKind) -> usize {
    g.add_vertex(label, kind).expect("built-in labels are unique")
}

fn edge(g: &mut RootGraph, a: &str, b: &str, m: u32) {
    let (a, b) = (g.index_of(a).expect("known"), g.index_of(b).expect("known"));
    g.set_edge(a, b, m);
}

/// Middle chain `c0-c1=c2=c3=c4-c5` with two single-edge paths of length
/// four from `c0` to `c5`. With two boundary components `c2` and `c3` are
/// (-1)-roots.
pub fn gamma_i(two_boundaries: bool) -> RootGraph {
    let mut g = RootGraph::new(if two_boundaries { "I" } else { "I1" });
    for i in 0..6 {
        let kind = if two_boundaries && (i == 2 || i == 3) {
            VertexKind::Root
        } else {
            VertexKind::Curve
        };
        add(&mut g, format!("c{i}"), kind);
    }
    for p in ["t", "b"] {
        for i in 1..=3 {
            add(&mut g, format!("{p}{i}"), VertexKind::Curve);
        }
    }
    let edges = [
        ("c0", "c1", 1),
        ("c1", "c2", 2),
        ("c2", "c3", 2),
        ("c3", "c4", 2),
        ("c4", "c5", 1),
        ("c0", "t1", 1),
        ("t1", "t2", 1),
        ("t2", "t3", 1),
        ("t3", "c5", 1),
        ("c0", "b1", 1),
        ("b1", "b2", 1),
        ("b2", "b3", 1),
        ("b3", "c5", 1),
    ];
    for (a, b, m) in edges {
        edge(&mut g, a, b, m);
    }
    g
}

pub fn gamma_ii() -> RootGraph {
    let mut g = RootGraph::new("II");
    for c in 'a'..='l' {
        add(&mut g, c.to_string(), VertexKind::Curve);
    }
    let edges = [
        ("f", "b"),
        ("h", "b"),
        ("i", "j"),
        ("i", "l"),
        ("j", "k"),
        ("l", "k"),
        ("a", "e"),
        ("a", "g"),
        ("e", "c"),
        ("g", "c"),
        ("a", "i"),
        ("b", "k"),
        ("d", "h"),
        ("c", "d"),
        ("d", "f"),
    ];
    for (a, b) in edges {
        edge(&mut g, a, b, 1);
    }
    g
}

fn duads(n: u8) -> Vec<(u8, u8)> {
    (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
}

fn meet(x: (u8, u8), y: (u8, u8)) -> usize {
    [x.0, x.1].iter().filter(|v| **v == y.0 || **v == y.1).count()
}

/// `e:ij` form the Petersen graph on the duads of five letters, `f:ij` join
/// when the duads share exactly one letter, and `e:ij = f:ij` is a double
/// edge. In characteristic 3 the `f` vertices are (-1)-roots.
pub fn gamma_vi(char3: bool) -> RootGraph {
    let mut g = RootGraph::new(if char3 { "VI" } else { "VI5" });
    let ds = duads(5);
    let f_kind = if char3 { VertexKind::Root } else { VertexKind::Curve };
    for d in &ds {
        add(&mut g, format!("e:{}{}", d.0, d.1), VertexKind::Curve);
    }
    for d in &ds {
        add(&mut g, format!("f:{}{}", d.0, d.1), f_kind);
    }
    let m = ds.len();
    for (i, &x) in ds.iter().enumerate() {
        for (j, &y) in ds.iter().enumerate().skip(i + 1) {
            match meet(x, y) {
                0 => g.set_edge(i, j, 1),
                1 => g.set_edge(m + i, m + j, 1),
                _ => {}
            }
        }
        g.set_edge(i, m + i, 2);
    }
    g
}

pub type Duad = (u8, u8);
pub type Syntheme = [Duad; 3];

/// The fifteen synthemes of six letters, each as sorted duads, in sorted order.
pub fn synthemes() -> Vec<Syntheme> {
    let mut out = Vec::new();
    for a in 2..=6u8 {
        let left: Vec<u8> = (2..=6).filter(|&x| x != a).collect();
        let p = left[0];
        for &q in &left[1..] {
            let r: Vec<u8> = left[1..].iter().copied().filter(|&x| x != q).collect();
            out.push([(1, a), (p, q), (r[0], r[1])]);
        }
    }
    out.sort();
    out
}

/// Triads up to complement, represented by the one containing 1.
pub fn triads() -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for b in 2..=6u8 {
        for c in b + 1..=6 {
            out.push([1, b, c]);
        }
    }
    out
}

pub fn duad_label(d: Duad) -> String {
    format!("d:{}{}", d.0, d.1)
}

pub fn syntheme_label(s: &Syntheme) -> String {
    format!("s:{}{}.{}{}.{}{}", s[0].0, s[0].1, s[1].0, s[1].1, s[2].0, s[2].1)
}

pub fn triad_label(t: [u8; 3]) -> String {
    format!("t:{}{}{}", t[0], t[1], t[2])
}

fn in_triad(x: u8, t: [u8; 3]) -> bool {
    t.contains(&x)
}

/// 15 duads, 15 synthemes and 10 triads of six letters; the triads are
/// (-1)-roots.
pub fn gamma_mi() -> RootGraph {
    let mut g = RootGraph::new("MI");
    let ds = duads(6);
    let ss = synthemes();
    let ts = triads();
    for &d in &ds {
        add(&mut g, duad_label(d), VertexKind::Curve);
    }
    for s in &ss {
        add(&mut g, syntheme_label(s), VertexKind::Curve);
    }
    for &t in &ts {
        add(&mut g, triad_label(t), VertexKind::Root);
    }
    let (nd, ns) = (ds.len(), ss.len());
    for (i, &x) in ds.iter().enumerate() {
        for (j, &y) in ds.iter().enumerate().skip(i + 1) {
            if meet(x, y) == 1 {
                g.set_edge(i, j, 1);
            }
        }
        for (j, s) in ss.iter().enumerate() {
            if s.contains(&x) {
                g.set_edge(i, nd + j, 2);
            }
        }
        for (j, &t) in ts.iter().enumerate() {
            // contained in the triad or in its complement
            if in_triad(x.0, t) == in_triad(x.1, t) {
                g.set_edge(i, nd + ns + j, 2);
            }
        }
    }
    for (i, s) in ss.iter().enumerate() {
        for (j, u) in ss.iter().enumerate().skip(i + 1) {
            if s.iter().all(|d| !u.contains(d)) {
                g.set_edge(nd + i, nd + j, 1);
            }
        }
        for (j, &t) in ts.iter().enumerate() {
            if s.iter().all(|d| in_triad(d.0, t) != in_triad(d.1, t)) {
                g.set_edge(nd + i, nd + ns + j, 2);
            }
        }
    }
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            g.set_edge(nd + ns + i, nd + ns + j, 2);
        }
    }
    g
}

/// The 24 elements of `S4` in vertex order, as cycle notation and as maps
/// (`perm[i-1] = tau(i)`).
pub fn s4_elements() -> Vec<(&'static str, [u8; 4])> {
    const NAMES: [&str; 24] = [
        "id", "(12)(34)", "(13)(24)", "(14)(23)", "(123)", "(134)", "(142)", "(243)", "(124)", "(132)", "(143)",
        "(234)", "(12)", "(34)", "(1324)", "(1423)", "(13)", "(24)", "(1234)", "(1432)", "(14)", "(23)",
        "(1243)", "(1342)",
    ];
    NAMES.iter().map(|&n| (n, parse_cycles(n))).collect()
}

fn parse_cycles(s: &str) -> [u8; 4] {
    let mut p = [1, 2, 3, 4];
    if s == "id" {
        return p;
    }
    for cyc in s.trim_matches(|c| c == '(' || c == ')').split(")(") {
        let c: Vec<u8> = cyc.bytes().map(|b| b - b'0').collect();
        for k in 0..c.len() {
            p[c[k] as usize - 1] = c[(k + 1) % c.len()];
        }
    }
    p
}

pub fn grid_label(i: u8, j: u8) -> String {
    format!("g:{i}{j}")
}

pub fn perm_label(name: &str) -> String {
    format!("p:{name}")
}

/// A 4x4 grid of (-1)-roots `g:ij` (single edges along rows and columns)
/// and 24 curves `p:tau` indexed by `S4`.
pub fn gamma_mii() -> RootGraph {
    let mut g = RootGraph::new("MII");
    for i in 1..=4 {
        for j in 1..=4 {
            add(&mut g, grid_label(i, j), VertexKind::Root);
        }
    }
    let perms = s4_elements();
    for (name, _) in &perms {
        add(&mut g, perm_label(name), VertexKind::Curve);
    }
    let cell = |i: u8, j: u8| (i as usize - 1) * 4 + (j as usize - 1);
    for a in 0..16 {
        for b in a + 1..16 {
            if a / 4 == b / 4 || a % 4 == b % 4 {
                g.set_edge(a, b, 1);
            }
        }
    }
    for (x, (_, p)) in perms.iter().enumerate() {
        for i in 1..=4u8 {
            g.set_edge(cell(i, p[i as usize - 1]), 16 + x, 2);
        }
        for (y, (_, q)) in perms.iter().enumerate().skip(x + 1) {
            let common = (0..4).filter(|&k| p[k] == q[k]).count() as u32;
            if common < 2 {
                g.set_edge(16 + x, 16 + y, 2 - common);
            }
        }
    }
    g
}

pub fn by_name(name: &str) -> Option<RootGraph> {
    Some(match name {
        "I" => gamma_i(true),
        "I1" => gamma_i(false),
        "II" => gamma_ii(),
        "VI" => gamma_vi(true),
        "VI5" => gamma_vi(false),
        "MI" => gamma_mi(),
        "MII" => gamma_mii(),
        _ => return None,
    })
}
