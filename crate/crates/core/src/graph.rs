//! Immutable simple graphs with bitset adjacency rows.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use sha2::{Digest, Sha256};

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    NotSymmetric(usize, usize),
    Loop(usize),
    VertexOutOfRange(usize),
    WrongRowLength { row: usize, len: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NotSymmetric(a, b) => write!(f, "edge {a}-{b} present in one direction only"),
            GraphError::Loop(v) => write!(f, "loop at vertex {v}"),
            GraphError::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            GraphError::WrongRowLength { row, len } => write!(f, "row {row} has capacity {len}"),
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.order(), self.edge_count())
    }
}

impl Graph {
    /// Builds the graph on `n` vertices with `adjacent(i, j)` queried for
    /// every `i < j`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut rows: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Graph { rows }
    }

    /// Wraps precomputed rows after checking symmetry and irreflexivity.
    pub fn from_rows(rows: Vec<BitSet>) -> Result<Graph, GraphError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.capacity() != n {
                return Err(GraphError::WrongRowLength { row: i, len: r.capacity() });
            }
            if r.contains(i) {
                return Err(GraphError::Loop(i));
            }
        }
        for (i, r) in rows.iter().enumerate() {
            for j in r.iter() {
                if !rows[j].contains(i) {
                    return Err(GraphError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Graph { rows })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        let mut rows: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b));
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            rows[a].insert(b);
            rows[b].insert(a);
        }
        Ok(Graph { rows })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { rows: (0..n).map(|_| BitSet::new(n)).collect() }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j` in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    /// Degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.rows.first().map_or(0, BitSet::count);
        self.rows.iter().all(|r| r.count() == d).then_some(d)
    }

    pub fn complement(&self) -> Graph {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut c = r.complement();
                c.remove(i);
                c
            })
            .collect();
        Graph { rows }
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |a, b| self.adjacent(vertices[a], vertices[b]))
    }

    /// SHA-256 over the order and adjacency words, as lowercase hex.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"flagkneser-graph-v1");
        h.update((self.order() as u64).to_le_bytes());
        for r in &self.rows {
            for w in r.words() {
                h.update(w.to_le_bytes());
            }
        }
        let mut out = String::with_capacity(64);
        for b in h.finalize() {
            let _ = write!(out, "{b:02x}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cycle_basics() {
        let c5 = Graph::from_fn(5, |i, j| (j - i) % 5 == 1 || (j - i) % 5 == 4);
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.regular_degree(), Some(2));
        assert_eq!(c5.complement().edge_count(), 5);
        assert_eq!(c5.edges().count(), 5);
        assert_eq!(Graph::from_edges(5, c5.edges()).unwrap(), c5);
        assert_eq!(c5.fingerprint().len(), 64);
        assert_ne!(c5.fingerprint(), c5.complement().fingerprint());
    }

    #[test]
    fn rejects_bad_rows() {
        let mut rows = vec![BitSet::new(2), BitSet::new(2)];
        rows[0].insert(1);
        assert_eq!(Graph::from_rows(rows.clone()), Err(GraphError::NotSymmetric(0, 1)));
        rows[1].insert(1);
        assert_eq!(Graph::from_rows(rows), Err(GraphError::Loop(1)));
        assert_eq!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::VertexOutOfRange(2)));
    }
}
