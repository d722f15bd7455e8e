use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{classify, members, recognize, span_check, Classification, DiagramType, GraphError, RootGraph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConnectedParabolic {
    pub set: VertexSet,
    pub kind: DiagramType,
}

impl ConnectedParabolic {
    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    fn key(&self) -> Vec<usize> {
        members(self.set).collect()
    }
}

/// Pairwise disjoint and orthogonal connected parabolics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicSubdiagram {
    pub components: Vec<ConnectedParabolic>,
    pub rank: usize,
}

impl ParabolicSubdiagram {
    /// Component types, largest rank first.
    pub fn type_multiset(&self) -> Vec<DiagramType> {
        let mut t: Vec<DiagramType> = self.components.iter().map(|c| c.kind).collect();
        t.sort_by(|a, b| b.rank().cmp(&a.rank()).then(a.cmp(b)));
        t
    }

    pub fn type_string(&self) -> String {
        join_types(&self.type_multiset())
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.components.iter().fold(0, |acc, c| acc | c.set)
    }
}

pub fn join_types(types: &[DiagramType]) -> String {
    types.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
}

impl fmt::Display for ParabolicSubdiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.type_string(), self.rank)
    }
}

/// All connected induced subgraphs that are extended Dynkin diagrams, in
/// lexicographic order of their sorted vertex indices.
///
/// Enumerates connected induced subgraphs by the ESU scheme, which reaches
/// each connected set exactly once along a chain of connected subsets.
/// Negative definiteness is inherited by induced subgraphs and a proper
/// connected superset of an affine set is indefinite, so the search only
/// grows definite sets and stops at affine ones.
pub fn connected_parabolics(g: &RootGraph) -> Result<Vec<ConnectedParabolic>, GraphError> {
    g.require_low_multiplicity()?;
    let mut out = Vec::new();
    for v in 0..g.len() {
        let above = !super::full_set(v + 1);
        let ext = g.neighbors(v) & above;
        extend(g, super::bit(v), ext, above, &mut out);
    }
    for c in &out {
        match classify(g, c.set)? {
            Classification::Affine(t) if t == c.kind => {}
            other => {
                return Err(GraphError::Internal(format!(
                    "{{{}}} enumerated as {} but classified {other:?}",
                    g.set_labels(c.set).join(","),
                    c.kind
                )))
            }
        }
    }
    out.sort_by_key(ConnectedParabolic::key);
    Ok(out)
}

fn extend(g: &RootGraph, set: VertexSet, mut ext: VertexSet, allowed: VertexSet, out: &mut Vec<ConnectedParabolic>) {
    let nbhd = g.closed_neighborhood(set);
    while ext != 0 {
        let w = super::first(ext);
        ext &= ext - 1;
        let next = set | super::bit(w);
        match recognize(g, next) {
            Some(t) if t.is_affine() => out.push(ConnectedParabolic { set: next, kind: t }),
            Some(_) => {
                let exclusive = g.neighbors(w) & !nbhd & allowed;
                extend(g, next, ext | exclusive, allowed, out);
            }
            None => {}
        }
    }
}

/// Parabolic subdiagrams of rank exactly `target_rank` to which no further
/// orthogonal connected parabolic can be added. Ordered lexicographically by
/// their component lists.
pub fn maximal_parabolics(g: &RootGraph, target_rank: usize) -> Result<Vec<ParabolicSubdiagram>, GraphError> {
    let comps = connected_parabolics(g)?;
    Ok(pack(g, &comps, target_rank, true))
}

/// Parabolic subdiagrams of rank `target`; with `maximal_only`, those to
/// which no further component can be added.
fn pack(g: &RootGraph, comps: &[ConnectedParabolic], target: usize, maximal_only: bool) -> Vec<ParabolicSubdiagram> {
    let blocks: Vec<VertexSet> = comps.iter().map(|c| g.closed_neighborhood(c.set)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut ctx = Search {
        comps,
        blocks: &blocks,
        target,
        maximal_only,
        chosen: &mut chosen,
        out: &mut out,
    };
    ctx.run(0, 0, 0);
    out
}

struct Search<'a> {
    comps: &'a [ConnectedParabolic],
    blocks: &'a [VertexSet],
    target: usize,
    maximal_only: bool,
    chosen: &'a mut Vec<usize>,
    out: &'a mut Vec<ParabolicSubdiagram>,
}

impl Search<'_> {
    fn run(&mut self, start: usize, blocked: VertexSet, rank: usize) {
        if self.target == 0 {
            // only the empty diagram, and it is maximal only when nothing fits
            if !self.maximal_only || self.comps.is_empty() {
                self.out.push(ParabolicSubdiagram {
                    components: Vec::new(),
                    rank: 0,
                });
            }
            return;
        }
        for i in start..self.comps.len() {
            let c = &self.comps[i];
            if c.set & blocked != 0 || rank + c.rank() > self.target {
                continue;
            }
            self.chosen.push(i);
            let (b, r) = (blocked | self.blocks[i], rank + c.rank());
            if r == self.target {
                if !self.maximal_only || self.comps.iter().all(|d| d.set & b != 0) {
                    self.out.push(ParabolicSubdiagram {
                        components: self.chosen.iter().map(|&j| self.comps[j]).collect(),
                        rank: r,
                    });
                }
            } else {
                self.run(i + 1, b, r);
            }
            self.chosen.pop();
        }
    }
}

/// `rank(span) - 2`: for a hyperbolic span of rank `n + 1`, the maximal
/// parabolic rank `n - 1`.
pub fn default_target_rank(g: &RootGraph) -> usize {
    span_check(g).rank.saturating_sub(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VinbergReport {
    pub pass: bool,
    pub target_rank: usize,
    pub connected: Vec<ConnectedParabolic>,
    pub maximal: Vec<ParabolicSubdiagram>,
    /// Connected parabolics that are a component of no parabolic of the
    /// target rank.
    pub witnesses: Vec<ConnectedParabolic>,
}

impl VinbergReport {
    /// Distinct type multisets among the maximal parabolics.
    pub fn maximal_types(&self) -> BTreeSet<Vec<DiagramType>> {
        self.maximal.iter().map(ParabolicSubdiagram::type_multiset).collect()
    }
}

/// Every connected parabolic must be a component of a parabolic subdiagram
/// of rank `target_rank`.
pub fn vinberg_check(g: &RootGraph, target_rank: usize) -> Result<VinbergReport, GraphError> {
    let connected = connected_parabolics(g)?;
    let all = pack(g, &connected, target_rank, false);
    let covered: HashSet<VertexSet> = all
        .iter()
        .flat_map(|p| p.components.iter().map(|c| c.set))
        .collect();
    let witnesses: Vec<ConnectedParabolic> = connected
        .iter()
        .filter(|c| !covered.contains(&c.set))
        .copied()
        .collect();
    let maximal = all
        .into_iter()
        .filter(|p| {
            let blocked = g.closed_neighborhood(p.vertex_set());
            connected.iter().all(|d| d.set & blocked != 0)
        })
        .collect();
    Ok(VinbergReport {
        pass: witnesses.is_empty(),
        target_rank,
        connected,
        maximal,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootgraph::VertexKind;

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

    /// Brute force over all subsets, via the exact classifier.
    fn brute(g: &RootGraph) -> Vec<VertexSet> {
        let mut v: Vec<VertexSet> = (1..1u128 << g.len())
            .filter(|&s| g.is_connected(s) && matches!(classify(g, s), Ok(Classification::Affine(_))))
            .collect();
        v.sort_by_key(|&s| members(s).collect::<Vec<_>>());
        v
    }

    #[test]
    fn a2_path_has_none() {
        let g = graph(2, &[(0, 1, 1)]);
        assert!(connected_parabolics(&g).unwrap().is_empty());
        let r = vinberg_check(&g, 0).unwrap();
        assert!(r.pass && r.witnesses.is_empty());
    }

    #[test]
    fn empty_graph() {
        let g = RootGraph::new("e");
        assert!(connected_parabolics(&g).unwrap().is_empty());
        assert!(maximal_parabolics(&g, 3).unwrap().is_empty());
    }

    #[test]
    fn high_multiplicity_rejected() {
        let g = graph(2, &[(0, 1, 3)]);
        assert!(matches!(connected_parabolics(&g), Err(GraphError::HighMultiplicity { .. })));
        assert!(vinberg_check(&g, 1).is_err());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // cube graph plus a chord and a double edge
        let g = graph(
            9,
            &[
                (0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (4, 5, 1), (5, 6, 1), (6, 7, 1), (7, 4, 1),
                (0, 4, 1), (1, 5, 1), (2, 6, 1), (3, 7, 1), (8, 0, 2), (8, 6, 1),
            ],
        );
        let got: Vec<VertexSet> = connected_parabolics(&g).unwrap().iter().map(|c| c.set).collect();
        assert_eq!(got, brute(&g));
    }

    #[test]
    fn hexagon_with_pendant() {
        // ~A5 on 0..5, pendant 6 on vertex 0, pair 7=8 orthogonal to everything
        let g = graph(
            9,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1), (0, 6, 1), (7, 8, 2)],
        );
        let max = maximal_parabolics(&g, 6).unwrap();
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].type_string(), "~A5+~A1");
        for p in &max {
            for (i, a) in p.components.iter().enumerate() {
                for b in &p.components[i + 1..] {
                    assert_eq!(a.set & g.closed_neighborhood(b.set), 0);
                }
            }
        }
        let r = vinberg_check(&g, 6).unwrap();
        assert!(r.pass);
        // at rank 5 the ~A1 pair sits in no rank-5 parabolic
        let r = vinberg_check(&g, 5).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].set, 0b1_1000_0000);
        assert!(r.maximal.is_empty());
    }
}
