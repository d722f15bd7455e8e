use std::fmt;
use std::str::FromStr;

use super::{members, GraphError, RootGraph, VertexSet};
use crate::arith::rank_signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
    AffA,
    AffD,
    AffE,
}

/// A Dynkin or extended Dynkin type. For affine types `index` is the rank,
/// one less than the vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramType {
    pub family: Family,
    pub index: usize,
}

impl DiagramType {
    pub const fn new(family: Family, index: usize) -> Self {
        Self { family, index }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.family, Family::AffA | Family::AffD | Family::AffE)
    }

    pub fn rank(&self) -> usize {
        self.index
    }

    pub fn vertex_count(&self) -> usize {
        if self.is_affine() {
            self.index + 1
        } else {
            self.index
        }
    }

    /// Whether a diagram with these parameters exists.
    pub fn is_valid(&self) -> bool {
        let n = self.index;
        match self.family {
            Family::A => n >= 1,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::AffA => n >= 1,
            Family::AffD => n >= 4,
            Family::AffE => (6..=8).contains(&n),
        }
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tilde, letter) = match self.family {
            Family::A => ("", 'A'),
            Family::D => ("", 'D'),
            Family::E => ("", 'E'),
            Family::AffA => ("~", 'A'),
            Family::AffD => ("~", 'D'),
            Family::AffE => ("~", 'E'),
        };
        write!(f, "{tilde}{letter}{}", self.index)
    }
}

/// Accepts `A4`, `~A5`, `Ã5`, `D~4` style spellings.
impl FromStr for DiagramType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().replace('Ã', "~A").replace('\u{303}', "~");
        let affine = t.contains('~');
        let rest = t.replace('~', "");
        let mut chars = rest.chars();
        let letter = chars.next().ok_or_else(|| format!("empty diagram type `{s}`"))?;
        let index: usize = chars
            .as_str()
            .parse()
            .map_err(|_| format!("bad diagram index in `{s}`"))?;
        let family = match (letter, affine) {
            ('A', false) => Family::A,
            ('D', false) => Family::D,
            ('E', false) => Family::E,
            ('A', true) => Family::AffA,
            ('D', true) => Family::AffD,
            ('E', true) => Family::AffE,
            _ => return Err(format!("unknown diagram family in `{s}`")),
        };
        let d = DiagramType { family, index };
        if !d.is_valid() {
            return Err(format!("no diagram `{s}`"));
        }
        Ok(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Definite(DiagramType),
    Affine(DiagramType),
    None,
}

/// Structural recognition of a connected induced subgraph, without any
/// linear algebra. Returns `None` for anything that is neither a Dynkin nor
/// an extended Dynkin diagram.
pub fn recognize(g: &RootGraph, set: VertexSet) -> Option<DiagramType> {
    let n = set.count_ones() as usize;
    let vs: Vec<usize> = members(set).collect();
    let mut edges = 0usize;
    let mut doubles = 0usize;
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            match g.mult(a, b) {
                0 => {}
                1 => edges += 1,
                2 => doubles += 1,
                _ => return None,
            }
        }
    }
    if doubles > 0 {
        return (n == 2 && doubles == 1).then_some(DiagramType::new(Family::AffA, 1));
    }
    let deg = |v: usize| (g.neighbors(v) & set).count_ones() as usize;
    if edges == n {
        // unicyclic and connected: a cycle iff 2-regular
        return (n >= 3 && vs.iter().all(|&v| deg(v) == 2)).then_some(DiagramType::new(Family::AffA, n - 1));
    }
    if edges + 1 != n {
        return None;
    }
    let branches: Vec<usize> = vs.iter().copied().filter(|&v| deg(v) >= 3).collect();
    match branches.as_slice() {
        [] => Some(DiagramType::new(Family::A, n)),
        [c] => {
            let arms = arm_lengths(g, set, *c);
            match arms.as_slice() {
                [1, 1, 1, 1] => Some(DiagramType::new(Family::AffD, 4)),
                [1, 1, k] => Some(DiagramType::new(Family::D, k + 3)),
                [1, 2, 2] => Some(DiagramType::new(Family::E, 6)),
                [1, 2, 3] => Some(DiagramType::new(Family::E, 7)),
                [1, 2, 4] => Some(DiagramType::new(Family::E, 8)),
                [1, 2, 5] => Some(DiagramType::new(Family::AffE, 8)),
                [1, 3, 3] => Some(DiagramType::new(Family::AffE, 7)),
                [2, 2, 2] => Some(DiagramType::new(Family::AffE, 6)),
                _ => None,
            }
        }
        [b1, b2] => {
            // two trivalent nodes, each carrying two leaves
            let ok = [*b1, *b2].iter().all(|&b| {
                deg(b) == 3 && members(g.neighbors(b) & set).filter(|&u| deg(u) == 1).count() == 2
            });
            ok.then_some(DiagramType::new(Family::AffD, n - 1))
        }
        _ => None,
    }
}

/// Sorted lengths of the paths hanging off a branch vertex of a tree whose
/// other vertices have degree at most 2.
fn arm_lengths(g: &RootGraph, set: VertexSet, center: usize) -> Vec<usize> {
    let mut arms: Vec<usize> = super::members(g.neighbors(center) & set)
        .map(|start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            loop {
                let next = (g.neighbors(cur) & set) & !super::bit(prev);
                if next == 0 {
                    break len;
                }
                prev = cur;
                cur = super::first(next);
                len += 1;
            }
        })
        .collect();
    arms.sort_unstable();
    arms
}

/// Classifies a connected vertex subset and cross-checks the structural
/// answer against the exact signature of the induced Gram.
pub fn classify(g: &RootGraph, set: VertexSet) -> Result<Classification, GraphError> {
    if !g.is_connected(set) {
        return Err(GraphError::Disconnected);
    }
    let structural = recognize(g, set);
    let sig = rank_signature(&g.induced_gram(set).to_rational()).expect("symmetric");
    let n = set.count_ones() as usize;
    let labels = || g.set_labels(set).join(",");
    if sig.is_negative_definite() {
        match structural {
            Some(t) if !t.is_affine() => Ok(Classification::Definite(t)),
            other => Err(GraphError::Internal(format!(
                "negative definite subset {{{}}} recognized as {other:?}",
                labels()
            ))),
        }
    } else if sig.positive == 0 && sig.zero == 1 {
        match structural {
            Some(t) if t.is_affine() && t.vertex_count() == n => Ok(Classification::Affine(t)),
            other => Err(GraphError::Internal(format!(
                "corank-1 semidefinite subset {{{}}} recognized as {other:?}",
                labels()
            ))),
        }
    } else {
        match structural {
            None => Ok(Classification::None),
            Some(t) => Err(GraphError::Internal(format!(
                "subset {{{}}} with signature {sig:?} recognized as {t}",
                labels()
            ))),
        }
    }
}
