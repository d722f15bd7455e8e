//! Multiplicity-preserving automorphisms by colour refinement with
//! individualisation. Vertex kinds are ignored.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::One;

use super::{members, RootGraph};

/// `perm[v]` is the image of `v`.
pub type Permutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    pub order: BigInt,
    /// Strong generators, one batch per base level.
    pub generators: Vec<Permutation>,
    /// Orbit length of each base point in the stabiliser of the previous ones.
    pub orbit_lengths: Vec<usize>,
    pub base: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Coloring {
    colors: Vec<u32>,
    /// Hash of the refinement history; equal for colourings related by an
    /// automorphism.
    trace: u64,
}

impl Coloring {
    fn uniform(n: usize) -> Self {
        Coloring {
            colors: vec![0; n],
            trace: 0,
        }
    }

    fn num_colors(&self) -> u32 {
        self.colors.iter().max().map_or(0, |m| m + 1)
    }

    fn is_discrete(&self) -> bool {
        self.num_colors() as usize == self.colors.len()
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<Vec<usize>> {
        let k = self.num_colors() as usize;
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (v, &c) in self.colors.iter().enumerate() {
            cells[c as usize].push(v);
        }
        cells.into_iter().filter(|c| c.len() > 1).min_by_key(Vec::len)
    }

    fn individualize(&self, g: &RootGraph, v: usize) -> Coloring {
        let mut colors = self.colors.clone();
        colors[v] = self.num_colors();
        let mut h = DefaultHasher::new();
        (self.trace, self.colors[v]).hash(&mut h);
        refine(
            g,
            Coloring {
                colors,
                trace: h.finish(),
            },
        )
    }
}

/// Iterated 1-dimensional Weisfeiler-Leman refinement. New colours are the
/// ranks of the sorted distinct signatures, so the result depends only on
/// the input colouring up to relabelling of vertices.
fn refine(g: &RootGraph, mut c: Coloring) -> Coloring {
    let n = g.len();
    loop {
        let k = c.num_colors();
        let mut sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u32)> = members(g.neighbors(v)).map(|u| (c.colors[u], g.mult(v, u))).collect();
                nb.sort_unstable();
                (c.colors[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let mut h = DefaultHasher::new();
        c.trace.hash(&mut h);
        distinct.hash(&mut h);
        for v in 0..n {
            let sig = std::mem::take(&mut sigs[v]);
            c.colors[v] = distinct.binary_search(&sig).expect("present") as u32;
        }
        c.trace = h.finish();
        if distinct.len() as u32 == k {
            return c;
        }
    }
}

fn is_automorphism(g: &RootGraph, p: &[usize]) -> bool {
    let n = g.len();
    (0..n).all(|a| members(g.neighbors(a)).all(|b| g.mult(p[a], p[b]) == g.mult(a, b)))
        && (0..n).all(|a| g.neighbors(p[a]).count_ones() == g.neighbors(a).count_ones())
}

/// An automorphism carrying colouring `left` to `right`, if any.
fn find(g: &RootGraph, left: &Coloring, right: &Coloring) -> Option<Permutation> {
    if left.trace != right.trace || left.num_colors() != right.num_colors() {
        return None;
    }
    if left.is_discrete() {
        let mut by_color = vec![0; g.len()];
        for (u, &c) in right.colors.iter().enumerate() {
            by_color[c as usize] = u;
        }
        let p: Permutation = left.colors.iter().map(|&c| by_color[c as usize]).collect();
        return is_automorphism(g, &p).then_some(p);
    }
    let cell = left.target_cell().expect("not discrete");
    let x = cell[0];
    let color = left.colors[x];
    let l2 = left.individualize(g, x);
    for y in (0..g.len()).filter(|&y| right.colors[y] == color) {
        let r2 = right.individualize(g, y);
        if let Some(p) = find(g, &l2, &r2) {
            return Some(p);
        }
    }
    None
}

fn orbit(start: usize, gens: &[&Permutation]) -> Vec<usize> {
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        let v = seen[i];
        for p in gens {
            let w = p[v];
            if !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.sort_unstable();
    seen
}

pub fn automorphisms(g: &RootGraph) -> AutGroup {
    let n = g.len();
    // base and the colouring at each level
    let mut levels: Vec<(Coloring, usize, Vec<usize>)> = Vec::new();
    let mut c = refine(g, Coloring::uniform(n));
    while let Some(cell) = c.target_cell() {
        let b = cell[0];
        let next = c.individualize(g, b);
        levels.push((c, b, cell));
        c = next;
    }
    let base: Vec<usize> = levels.iter().map(|l| l.1).collect();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut lengths = vec![1; levels.len()];
    for (k, (col, b, cell)) in levels.iter().enumerate().rev() {
        let fixes_prefix = |p: &Permutation| base[..k].iter().all(|&v| p[v] == v);
        let left = col.individualize(g, *b);
        let mut orb = orbit(*b, &gens.iter().filter(|p| fixes_prefix(p)).collect::<Vec<_>>());
        for &y in cell {
            if orb.contains(&y) {
                continue;
            }
            let right = col.individualize(g, y);
            if let Some(p) = find(g, &left, &right) {
                gens.push(p);
                orb = orbit(*b, &gens.iter().filter(|p| fixes_prefix(p)).collect::<Vec<_>>());
            }
        }
        lengths[k] = orb.len();
    }
    let order = lengths.iter().fold(BigInt::one(), |acc, &l| acc * BigInt::from(l));
    AutGroup {
        order,
        generators: gens,
        orbit_lengths: lengths,
        base,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootgraph::VertexKind;
    use std::collections::HashSet;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> RootGraph {
        let mut g = RootGraph::new("t");
        for i in 0..n {
            g.add_vertex(format!("v{i}"), VertexKind::Curve).unwrap();
        }
        for &(a, b, m) in edges {
            g.set_edge(a, b, m);
        }
        g
    }

    /// Group closure by breadth-first multiplication.
    fn closure(n: usize, gens: &[Permutation]) -> usize {
        let id: Permutation = (0..n).collect();
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(p) = queue.pop() {
            for s in gens {
                let q: Permutation = p.iter().map(|&v| s[v]).collect();
                if seen.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
        seen.len()
    }

    fn check(g: &RootGraph, expected: u64) {
        let a = automorphisms(g);
        assert_eq!(a.order, BigInt::from(expected));
        for p in &a.generators {
            assert!(is_automorphism(g, p));
        }
        assert_eq!(closure(g.len(), &a.generators) as u64, expected);
    }

    #[test]
    fn complete_double_k4() {
        let edges: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b, 2))).collect();
        check(&graph(4, &edges), 24);
    }

    #[test]
    fn small_graphs() {
        check(&graph(0, &[]), 1);
        check(&graph(1, &[]), 1);
        check(&graph(3, &[]), 6);
        check(&graph(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]), 2);
        let c6: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6, 1)).collect();
        check(&graph(6, &c6), 12);
        // multiplicity breaks the symmetry of a triangle
        check(&graph(3, &[(0, 1, 2), (1, 2, 1), (2, 0, 1)]), 2);
    }

    #[test]
    fn petersen() {
        let duads: Vec<(usize, usize)> = (1..=5).flat_map(|a| (a + 1..=5).map(move |b| (a, b))).collect();
        let mut edges = Vec::new();
        for (i, x) in duads.iter().enumerate() {
            for (j, y) in duads.iter().enumerate().skip(i + 1) {
                if x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1 {
                    edges.push((i, j, 1));
                }
            }
        }
        check(&graph(10, &edges), 120);
    }

    #[test]
    fn cube() {
        let mut edges = Vec::new();
        for a in 0..8usize {
            for k in 0..3 {
                let b = a ^ (1 << k);
                if a < b {
                    edges.push((a, b, 1));
                }
            }
        }
        check(&graph(8, &edges), 48);
    }
}
