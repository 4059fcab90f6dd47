//! The extremal number `ex(G, rK2)`: the largest edge subset of `G` with no
//! matching of size `r`.

use thiserror::Error;

use crate::edge_set::EdgeIndexSet;
use crate::graph::Graph;
use crate::matchings::{has_matching_of_size, matching_number};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("matching size r must be at least 1")]
    ZeroR,
    #[error("graph has {0} edges; edge masks hold at most 128")]
    TooManyEdges(usize),
}

/// An edge subset `F` of the host graph whose spanning subgraph has no
/// r-matching; `value = |F|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalCertificate {
    pub edges: EdgeIndexSet,
    pub value: usize,
    pub r: usize,
}

impl ExtremalCertificate {
    fn new(edges: EdgeIndexSet, r: usize) -> Self {
        ExtremalCertificate {
            edges,
            value: edges.len(),
            r,
        }
    }

    /// Re-checks the certificate from scratch with the blossom matching
    /// number, independent of the backtracking used during search.
    pub fn validate(&self, g: &Graph) -> bool {
        self.r >= 1
            && self.edges.is_subset(g.edge_set())
            && self.value == self.edges.len()
            && matching_number(&g.spanning_subgraph(self.edges)) < self.r
    }
}

/// `E(G)` minus the star of the lowest-index minimum-degree vertex.
///
/// Only meaningful when `n = 2r`: every r-matching is then perfect and must
/// cover the isolated vertex, so none survives. Returns `None` otherwise.
pub fn star_removal_bound(g: &Graph, r: usize) -> Option<ExtremalCertificate> {
    if r == 0 || g.n() != 2 * r || !g.fits_edge_mask() {
        return None;
    }
    let delta = g.min_degree();
    let v = (0..g.n()).find(|&v| g.degree(v) == delta)?;
    let mut edges = g.edge_set();
    for &e in g.incident_edges(v) {
        edges.remove(e);
    }
    Some(ExtremalCertificate::new(edges, r))
}

/// Keeps edges in index order whenever no r-matching appears. A maximal,
/// not necessarily maximum, certificate.
pub fn greedy_bound(g: &Graph, r: usize) -> ExtremalCertificate {
    let mut kept = EdgeIndexSet::EMPTY;
    for e in 0..g.m() {
        let next = kept.with(e);
        if !has_matching_of_size(g, next, r) {
            kept = next;
        }
    }
    ExtremalCertificate::new(kept, r)
}

struct Search<'a> {
    g: &'a Graph,
    r: usize,
    m: usize,
    /// Edges incident with either endpoint of edge `e`, including `e`.
    touching: Vec<EdgeIndexSet>,
    best: EdgeIndexSet,
    nodes: u64,
}

impl Search<'_> {
    /// Whether `kept + e` has an r-matching, given `kept` has none. Such a
    /// matching must use `e`, so look for r-1 edges avoiding its endpoints.
    fn closes_matching(&self, kept: EdgeIndexSet, e: usize) -> bool {
        has_matching_of_size(self.g, kept.difference(self.touching[e]), self.r - 1)
    }

    fn go(&mut self, i: usize, kept: EdgeIndexSet) {
        self.nodes += 1;
        let undecided = self.m - i;
        if kept.len() + undecided <= self.best.len() {
            return;
        }
        if undecided == 0 {
            self.best = kept;
            return;
        }
        let everything = kept.union(EdgeIndexSet::full(self.m).difference(EdgeIndexSet::full(i)));
        if !has_matching_of_size(self.g, everything, self.r) {
            self.best = everything;
            return;
        }
        if !self.closes_matching(kept, i) {
            self.go(i + 1, kept.with(i));
        }
        self.go(i + 1, kept);
    }
}

/// Exact `ex(G, rK2)` with a witnessing edge set.
///
/// Branch-and-bound over edges in index order, trying keep before delete. A
/// branch dies once its kept set holds an r-matching or once kept plus
/// undecided edges cannot beat the incumbent. The incumbent starts from the
/// star-removal construction when `n = 2r` and from the greedy bound
/// otherwise, whichever is larger. The first optimum in search order wins.
pub fn ex_exact(g: &Graph, r: usize) -> Result<ExtremalCertificate, ExtremalError> {
    if r == 0 {
        return Err(ExtremalError::ZeroR);
    }
    if !g.fits_edge_mask() {
        return Err(ExtremalError::TooManyEdges(g.m()));
    }
    let m = g.m();
    let mut seed = greedy_bound(g, r);
    if let Some(star) = star_removal_bound(g, r) {
        if star.value >= seed.value {
            seed = star;
        }
    }
    let touching = (0..m)
        .map(|e| {
            let (u, v) = g.edge(e);
            g.incident_edges(u)
                .iter()
                .chain(g.incident_edges(v))
                .copied()
                .collect()
        })
        .collect();
    let mut search = Search {
        g,
        r,
        m,
        touching,
        best: seed.edges,
        nodes: 0,
    };
    search.go(0, EdgeIndexSet::EMPTY);
    let cert = ExtremalCertificate::new(search.best, r);
    debug_assert!(cert.validate(g));
    Ok(cert)
}
