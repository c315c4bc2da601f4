//! Simple undirected graphs over vertices `0..n`, stored as bitset
//! adjacency rows.

use crate::bitset::Bitset;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) has an endpoint out of range")]
    OutOfRange(usize, usize),
    #[error("loop edge ({0}, {0}) not allowed")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Bitset>,
}

impl Graph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Bitset::new(n); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u, v));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if adj[u].contains(v) {
                return Err(GraphError::Duplicate(u, v));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            m += 1;
        }
        Ok(Graph { n, m, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &Bitset {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Image of the graph under a vertex relabeling: vertex `u` becomes
    /// `perm[u]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges(self.n, edges).expect("relabeling preserves validity")
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(0, []), Err(GraphError::Empty));
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::OutOfRange(0, 3))
        );
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::Duplicate(1, 0))
        );
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(g.adjacent(1, 0));
        assert!(g.adjacent(3, 2));
        assert!(!g.adjacent(0, 2));
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn relabel_roundtrip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let perm = [3, 2, 1, 0];
        let h = g.relabel(&perm);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }
}
