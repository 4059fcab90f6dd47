//! Simple undirected graphs with a canonical edge indexing.

use thiserror::Error;

use crate::edge_set::{EdgeIndexSet, MAX_EDGES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as pairs `(u, v)` with `u < v`, sorted lexicographically.
/// The position of an edge in that list is its edge index, and every other
/// module refers to edges by index only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor lists.
    neighbors: Vec<Vec<usize>>,
    /// Incident edge indices per vertex, sorted.
    incident: Vec<Vec<usize>>,
}

impl Graph {
    /// The null graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            neighbors: vec![Vec::new(); n],
            incident: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an arbitrary list of endpoint pairs.
    ///
    /// Pairs are oriented and sorted; loops and repeated pairs are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    /// Builds a graph from edges that are already canonical: `u < v < n`,
    /// strictly increasing in lexicographic order.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut neighbors = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            neighbors[u].push(v);
            neighbors[v].push(u);
            incident[u].push(i);
            incident[v].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            neighbors,
            incident,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list; the slice position is the edge index.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Edge indices incident with `v`, increasing.
    #[inline]
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// True when every edge index fits in an [`EdgeIndexSet`].
    pub fn fits_edge_mask(&self) -> bool {
        self.m() <= MAX_EDGES
    }

    /// All edge indices as a set.
    ///
    /// # Panics
    /// When the graph has more than [`MAX_EDGES`] edges.
    pub fn edge_set(&self) -> EdgeIndexSet {
        EdgeIndexSet::full(self.m())
    }

    /// Spanning subgraph on the same vertex set keeping only `keep`.
    ///
    /// Edge indices are renumbered in the result.
    pub fn spanning_subgraph(&self, keep: EdgeIndexSet) -> Graph {
        let edges = keep
            .iter()
            .filter(|&e| e < self.m())
            .map(|e| self.edges[e])
            .collect();
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// Copy of the graph with edge `e` deleted. Indices above `e` shift down.
    pub fn without_edge(&self, e: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// Whether every vertex is reachable from vertex 0. The null graph and
    /// single vertices are connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Edge indices of all bridges, sorted.
    ///
    /// Iterative lowpoint DFS; the tree edge to the parent is skipped by
    /// index, not by endpoint.
    pub fn bridges(&self) -> Vec<usize> {
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; self.n];
        let mut low = vec![0; self.n];
        let mut out = Vec::new();
        let mut clock = 0;
        // (vertex, edge used to enter it, cursor into incident list)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..self.n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            stack.push((root, UNSEEN, 0));
            while let Some(top) = stack.last_mut() {
                let (v, via, cursor) = *top;
                if let Some(&e) = self.incident[v].get(cursor) {
                    top.2 += 1;
                    if e == via {
                        continue;
                    }
                    let (a, b) = self.edges[e];
                    let w = if a == v { b } else { a };
                    if disc[w] == UNSEEN {
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push(via);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }
}
