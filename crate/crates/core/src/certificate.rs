//! Verifiable witnesses bound to a specific graph build by fingerprint.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    IndependentSet,
    ProperColoring,
    CliqueCover,
    CoveringFamily,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::IndependentSet => "independent_set",
            CertificateKind::ProperColoring => "proper_coloring",
            CertificateKind::CliqueCover => "clique_cover",
            CertificateKind::CoveringFamily => "covering_family",
        }
    }
}

/// Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub provenance: String,
    pub graph_fingerprint: String,
    pub vertex_sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    FingerprintMismatch,
    VertexOutOfRange(usize),
    WrongSetCount(usize),
    Adjacent(usize, usize),
    NotAdjacent(usize, usize),
    Repeated(usize),
    Uncovered(usize),
    /// Independent set to which the vertex can still be added.
    NotMaximal(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FingerprintMismatch => f.write_str("certificate belongs to a different graph"),
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::WrongSetCount(n) => write!(f, "independent set certificate carries {n} sets"),
            Violation::Adjacent(a, b) => write!(f, "vertices {a} and {b} are adjacent"),
            Violation::NotAdjacent(a, b) => write!(f, "vertices {a} and {b} are not adjacent"),
            Violation::Repeated(v) => write!(f, "vertex {v} appears twice"),
            Violation::Uncovered(v) => write!(f, "vertex {v} is not covered"),
            Violation::NotMaximal(v) => write!(f, "vertex {v} can be added"),
        }
    }
}

impl core::error::Error for Violation {}

impl Certificate {
    pub fn new(kind: CertificateKind, provenance: impl Into<String>, graph: &Graph, mut sets: Vec<Vec<usize>>) -> Self {
        for s in &mut sets {
            s.sort_unstable();
        }
        Certificate { kind, provenance: provenance.into(), graph_fingerprint: graph.fingerprint(), vertex_sets: sets }
    }

    pub fn independent_set(provenance: impl Into<String>, graph: &Graph, set: Vec<usize>) -> Self {
        Self::new(CertificateKind::IndependentSet, provenance, graph, alloc::vec![set])
    }

    /// Number of sets (colors, cliques, covering members).
    pub fn len(&self) -> usize {
        self.vertex_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_sets.is_empty()
    }

    /// The vertex set of an independent-set certificate.
    pub fn set(&self) -> &[usize] {
        self.vertex_sets.first().map_or(&[], Vec::as_slice)
    }

    /// Re-checks the invariant for the certificate's kind against `graph`.
    pub fn verify(&self, graph: &Graph) -> Result<(), Violation> {
        if self.graph_fingerprint != graph.fingerprint() {
            return Err(Violation::FingerprintMismatch);
        }
        self.verify_unbound(graph)
    }

    /// As [`Certificate::verify`] without the fingerprint comparison, for
    /// callers that already compared the fingerprint of `graph`.
    pub fn verify_unbound(&self, graph: &Graph) -> Result<(), Violation> {
        let n = graph.order();
        for s in &self.vertex_sets {
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Violation::VertexOutOfRange(v));
            }
        }
        match self.kind {
            CertificateKind::IndependentSet => {
                if self.vertex_sets.len() != 1 {
                    return Err(Violation::WrongSetCount(self.vertex_sets.len()));
                }
                check_independent(graph, &self.vertex_sets[0])
            }
            CertificateKind::ProperColoring => {
                check_partition(n, &self.vertex_sets)?;
                self.vertex_sets.iter().try_for_each(|s| check_independent(graph, s))
            }
            CertificateKind::CliqueCover => {
                check_partition(n, &self.vertex_sets)?;
                self.vertex_sets.iter().try_for_each(|s| check_clique(graph, s))
            }
            CertificateKind::CoveringFamily => {
                let mut seen = BitSet::new(n);
                for s in &self.vertex_sets {
                    check_independent(graph, s)?;
                    s.iter().for_each(|&v| seen.insert(v));
                }
                match seen.complement().first() {
                    Some(v) => Err(Violation::Uncovered(v)),
                    None => Ok(()),
                }
            }
        }
    }

    /// Turns a covering family into a proper coloring: each vertex goes to
    /// the first set containing it.
    pub fn first_hit_coloring(&self, provenance: impl Into<String>) -> Certificate {
        let n_max = self.vertex_sets.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut taken = BitSet::new(n_max);
        let sets = self
            .vertex_sets
            .iter()
            .map(|s| {
                s.iter()
                    .copied()
                    .filter(|&v| {
                        let fresh = !taken.contains(v);
                        taken.insert(v);
                        fresh
                    })
                    .collect()
            })
            .collect();
        Certificate {
            kind: CertificateKind::ProperColoring,
            provenance: provenance.into(),
            graph_fingerprint: self.graph_fingerprint.clone(),
            vertex_sets: sets,
        }
    }
}

pub fn check_independent(graph: &Graph, set: &[usize]) -> Result<(), Violation> {
    let n = graph.order();
    let mut members = BitSet::new(n);
    for &v in set {
        if v >= n {
            return Err(Violation::VertexOutOfRange(v));
        }
        if members.contains(v) {
            return Err(Violation::Repeated(v));
        }
        members.insert(v);
    }
    for &v in set {
        if let Some(u) = graph.neighbors(v).intersection(&members).first() {
            return Err(Violation::Adjacent(v.min(u), v.max(u)));
        }
    }
    Ok(())
}

fn check_clique(graph: &Graph, set: &[usize]) -> Result<(), Violation> {
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            if !graph.adjacent(a, b) {
                return Err(Violation::NotAdjacent(a.min(b), a.max(b)));
            }
        }
    }
    Ok(())
}

fn check_partition(n: usize, sets: &[Vec<usize>]) -> Result<(), Violation> {
    let mut seen = BitSet::new(n);
    for s in sets {
        for &v in s {
            if seen.contains(v) {
                return Err(Violation::Repeated(v));
            }
            seen.insert(v);
        }
    }
    match seen.complement().first() {
        Some(v) => Err(Violation::Uncovered(v)),
        None => Ok(()),
    }
}

/// Independent `set` to which no further vertex can be added.
pub fn check_maximal_independent(graph: &Graph, set: &[usize]) -> Result<(), Violation> {
    check_independent(graph, set)?;
    let n = graph.order();
    let mut blocked = BitSet::from_indices(n, set.iter().copied());
    for &v in set {
        blocked.union_with(graph.neighbors(v));
    }
    match blocked.complement().first() {
        Some(v) => Err(Violation::NotMaximal(v)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c5() -> Graph {
        Graph::from_fn(5, |i, j| j - i == 1 || j - i == 4)
    }

    #[test]
    fn kinds_verify() {
        let g = c5();
        let is = Certificate::independent_set("t", &g, vec![2, 0]);
        assert_eq!(is.set(), &[0, 2]);
        assert!(is.verify(&g).is_ok());
        assert_eq!(check_maximal_independent(&g, &[0, 2]), Ok(()));
        assert_eq!(check_maximal_independent(&g, &[0]), Err(Violation::NotMaximal(2)));
        let bad = Certificate::independent_set("t", &g, vec![0, 1]);
        assert_eq!(bad.verify(&g), Err(Violation::Adjacent(0, 1)));

        let col = Certificate::new(CertificateKind::ProperColoring, "t", &g, vec![vec![0, 2], vec![1, 3], vec![4]]);
        assert!(col.verify(&g).is_ok());
        let overlap =
            Certificate::new(CertificateKind::ProperColoring, "t", &g, vec![vec![0, 2], vec![2, 4], vec![1, 3]]);
        assert_eq!(overlap.verify(&g), Err(Violation::Repeated(2)));
        let cover =
            Certificate::new(CertificateKind::CoveringFamily, "t", &g, vec![vec![0, 2], vec![2, 4], vec![1, 3]]);
        assert!(cover.verify(&g).is_ok());
        assert!(cover.first_hit_coloring("c").verify(&g).is_ok());

        let cc = Certificate::new(CertificateKind::CliqueCover, "t", &g, vec![vec![0, 1], vec![2, 3], vec![4]]);
        assert!(cc.verify(&g).is_ok());
        let ncc = Certificate::new(CertificateKind::CliqueCover, "t", &g, vec![vec![0, 2], vec![1], vec![3, 4]]);
        assert_eq!(ncc.verify(&g), Err(Violation::NotAdjacent(0, 2)));
    }

    #[test]
    fn fingerprint_binding() {
        let g = c5();
        let is = Certificate::independent_set("t", &g, vec![0, 2]);
        assert_eq!(is.verify(&g.complement()), Err(Violation::FingerprintMismatch));
    }
}
