//! Pair partitions of balanced creation/annihilation patterns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::symcore::Eps;

/// One contraction: 1-based positions of the creator (`m_j`) and annihilator (`m'_j`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub creation: usize,
    pub annihilation: usize,
}

impl Edge {
    pub fn new(creation: usize, annihilation: usize) -> Self {
        Edge {
            creation,
            annihilation,
        }
    }

    /// `sign(m_j - m'_j)`: `+1` when the creator sits right of the annihilator.
    pub fn orientation(&self) -> i64 {
        if self.creation > self.annihilation {
            1
        } else {
            -1
        }
    }

    pub fn left(&self) -> usize {
        self.creation.min(self.annihilation)
    }

    pub fn right(&self) -> usize {
        self.creation.max(self.annihilation)
    }
}

/// How edge `l` sits relative to edge `j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRelation {
    Disjoint,
    /// `a(l) < a(j) < b(j) < b(l)`
    Contains,
    /// `a(j) < a(l) < b(l) < b(j)`
    Inside,
    /// `a(l) < a(j) < b(l) < b(j)`
    LeftCross,
    /// `a(j) < a(l) < b(j) < b(l)`
    RightCross,
}

pub fn classify(l: &Edge, j: &Edge) -> EdgeRelation {
    let (al, bl, aj, bj) = (l.left(), l.right(), j.left(), j.right());
    if al < aj && bj < bl {
        EdgeRelation::Contains
    } else if aj < al && bl < bj {
        EdgeRelation::Inside
    } else if al < aj && aj < bl && bl < bj {
        EdgeRelation::LeftCross
    } else if aj < al && al < bj && bj < bl {
        EdgeRelation::RightCross
    } else {
        EdgeRelation::Disjoint
    }
}

/// Perfect matching of creators with annihilators, edges numbered by left end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    edges: Vec<Edge>,
}

impl Diagram {
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(Edge::left);
        Diagram { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    /// Relation of edge `l` to edge `j` (0-based edge indices).
    pub fn relation(&self, l: usize, j: usize) -> EdgeRelation {
        classify(&self.edges[l], &self.edges[j])
    }

    /// Indices of edges standing in `rel` to edge `j`.
    pub fn related(&self, j: usize, rel: EdgeRelation) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&l| l != j && self.relation(l, j) == rel)
    }

    pub fn is_non_crossing(&self) -> bool {
        (0..self.edges.len()).all(|j| {
            (0..self.edges.len()).all(|l| l == j || self.relation(l, j) != EdgeRelation::LeftCross)
        })
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            write!(f, "({},{})", e.creation, e.annihilation)?;
        }
        Ok(())
    }
}

/// All `n!` matchings of a balanced pattern; empty for unbalanced input.
///
/// Order: creators taken in ascending position, each assigned an unused
/// annihilator position, assignments enumerated lexicographically.
pub fn enumerate_pairings(pattern: &[Eps]) -> Vec<Diagram> {
    let creations: Vec<usize> = positions(pattern, Eps::Creation);
    let annihilations: Vec<usize> = positions(pattern, Eps::Annihilation);
    if creations.len() != annihilations.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used = vec![false; annihilations.len()];
    let mut current: Vec<Edge> = Vec::with_capacity(creations.len());
    assign(
        &creations,
        &annihilations,
        &mut used,
        &mut current,
        &mut out,
    );
    out
}

fn positions(pattern: &[Eps], which: Eps) -> Vec<usize> {
    pattern
        .iter()
        .enumerate()
        .filter(|(_, e)| **e == which)
        .map(|(i, _)| i + 1)
        .collect()
}

fn assign(
    creations: &[usize],
    annihilations: &[usize],
    used: &mut [bool],
    current: &mut Vec<Edge>,
    out: &mut Vec<Diagram>,
) {
    let next = current.len();
    if next == creations.len() {
        out.push(Diagram::new(current.clone()));
        return;
    }
    for (i, &a) in annihilations.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        current.push(Edge::new(creations[next], a));
        assign(creations, annihilations, used, current, out);
        current.pop();
        used[i] = false;
    }
}

pub fn count_non_crossing(pattern: &[Eps]) -> usize {
    enumerate_pairings(pattern)
        .iter()
        .filter(|d| d.is_non_crossing())
        .count()
}

/// Counts reported by the `diagrams` CLI mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramStats {
    pub total: usize,
    pub non_crossing: usize,
    /// Non-crossing diagrams whose edges all have the creator on the right.
    pub fock_surviving: usize,
    pub diagrams: Vec<String>,
}

pub fn diagram_stats(pattern: &[Eps]) -> DiagramStats {
    let all = enumerate_pairings(pattern);
    let non_crossing: Vec<&Diagram> = all.iter().filter(|d| d.is_non_crossing()).collect();
    let fock_surviving = non_crossing
        .iter()
        .filter(|d| d.edges().iter().all(|e| e.orientation() == 1))
        .count();
    DiagramStats {
        total: all.len(),
        non_crossing: non_crossing.len(),
        fock_surviving,
        diagrams: all.iter().map(Diagram::to_string).collect(),
    }
}
