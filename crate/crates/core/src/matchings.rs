//! Matchings: enumeration, exact matching number, perfect matching structure.
//!
//! Everything here that produces an [`EdgeIndexSet`] requires the graph to
//! have at most [`MAX_EDGES`](crate::MAX_EDGES) edges and panics otherwise.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edge_set::EdgeIndexSet;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("need at least two edges, graph has {0}")]
    TooFewEdges(usize),
}

/// A set of pairwise vertex-disjoint edges, by edge index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: EdgeIndexSet,
}

impl Matching {
    /// Wraps `edges` if they really are pairwise disjoint in `g`.
    pub fn new(g: &Graph, edges: EdgeIndexSet) -> Option<Self> {
        is_matching(g, edges).then_some(Matching { edges })
    }

    pub(crate) fn from_set_unchecked(edges: EdgeIndexSet) -> Self {
        Matching { edges }
    }

    #[inline]
    pub fn edges(&self) -> EdgeIndexSet {
        self.edges
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        2 * self.size() == g.n()
    }

    /// Endpoint pairs of the member edges, in edge-index order.
    pub fn endpoints(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| g.edge(e)).collect()
    }
}

/// Whether the edges in `set` are pairwise vertex-disjoint in `g`.
pub fn is_matching(g: &Graph, set: EdgeIndexSet) -> bool {
    let mut covered = vec![false; g.n()];
    for e in set {
        if e >= g.m() {
            return false;
        }
        let (u, v) = g.edge(e);
        if covered[u] || covered[v] {
            return false;
        }
        covered[u] = true;
        covered[v] = true;
    }
    true
}

struct Enumerator<'a, F> {
    g: &'a Graph,
    allowed: EdgeIndexSet,
    r: usize,
    covered: Vec<bool>,
    visit: F,
}

impl<F> Enumerator<'_, F>
where
    F: FnMut(Matching) -> ControlFlow<()>,
{
    fn run(&mut self, start: usize, chosen: EdgeIndexSet, uncovered: usize) -> ControlFlow<()> {
        let have = chosen.len();
        if have == self.r {
            return (self.visit)(Matching::from_set_unchecked(chosen));
        }
        let need = self.r - have;
        if 2 * need > uncovered {
            return ControlFlow::Continue(());
        }
        let m = self.g.m();
        for e in start..m {
            if m - e < need {
                break;
            }
            if !self.allowed.contains(e) {
                continue;
            }
            let (u, v) = self.g.edge(e);
            if self.covered[u] || self.covered[v] {
                continue;
            }
            self.covered[u] = true;
            self.covered[v] = true;
            let flow = self.run(e + 1, chosen.with(e), uncovered - 2);
            self.covered[u] = false;
            self.covered[v] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every matching of size exactly `r` using only edges in `allowed`,
/// in lexicographic order of sorted edge-index tuples. The visitor may stop
/// the walk early by returning `ControlFlow::Break`.
pub fn for_each_matching<F>(g: &Graph, allowed: EdgeIndexSet, r: usize, visit: F) -> ControlFlow<()>
where
    F: FnMut(Matching) -> ControlFlow<()>,
{
    assert!(
        g.fits_edge_mask(),
        "graph has {} edges, mask holds 128",
        g.m()
    );
    let mut walk = Enumerator {
        g,
        allowed: allowed.intersection(g.edge_set()),
        r,
        covered: vec![false; g.n()],
        visit,
    };
    walk.run(0, EdgeIndexSet::EMPTY, g.n())
}

/// All matchings of size exactly `r`, each once, in lexicographic order of
/// their sorted edge-index tuples. `r = 0` yields the single empty matching.
pub fn enumerate_matchings(g: &Graph, r: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    let _ = for_each_matching(g, g.edge_set(), r, |mm| {
        out.push(mm);
        ControlFlow::Continue(())
    });
    out
}

pub fn count_matchings(g: &Graph, r: usize) -> usize {
    let mut count = 0;
    let _ = for_each_matching(g, g.edge_set(), r, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Whether the spanning subgraph with edge set `allowed` has a matching of
/// size `r`. Exits at the first one found.
///
/// Branches on the lowest uncovered vertex: match it along an allowed edge,
/// or leave it exposed while enough vertices remain.
pub fn has_matching_of_size(g: &Graph, allowed: EdgeIndexSet, r: usize) -> bool {
    fn go(
        g: &Graph,
        allowed: EdgeIndexSet,
        covered: &mut [bool],
        v: usize,
        need: usize,
        uncovered: usize,
    ) -> bool {
        if need == 0 {
            return true;
        }
        if 2 * need > uncovered {
            return false;
        }
        let Some(v) = (v..g.n()).find(|&x| !covered[x]) else {
            return false;
        };
        covered[v] = true;
        for &e in g.incident_edges(v) {
            if !allowed.contains(e) {
                continue;
            }
            let (a, b) = g.edge(e);
            let w = if a == v { b } else { a };
            if covered[w] {
                continue;
            }
            covered[w] = true;
            let found = go(g, allowed, covered, v + 1, need - 1, uncovered - 2);
            covered[w] = false;
            if found {
                covered[v] = false;
                return true;
            }
        }
        let found = go(g, allowed, covered, v + 1, need, uncovered - 1);
        covered[v] = false;
        found
    }
    if r == 0 {
        return true;
    }
    if allowed
        .intersection(EdgeIndexSet::full(g.m().min(128)))
        .len()
        < r
    {
        return false;
    }
    let mut covered = vec![false; g.n()];
    go(g, allowed, &mut covered, 0, r, g.n())
}

/// Maximum matching size ν(G), by Edmonds' blossom algorithm.
pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).len()
}

/// A maximum matching as a list of edge indices, increasing.
pub fn max_matching(g: &Graph) -> Vec<usize> {
    Blossom::new(g).solve()
}

const NIL: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NIL; n],
            parent: vec![NIL; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn solve(mut self) -> Vec<usize> {
        let n = self.g.n();
        // greedy start
        for &(u, v) in self.g.edges() {
            if self.mate[u] == NIL && self.mate[v] == NIL {
                self.mate[u] = v;
                self.mate[v] = u;
            }
        }
        for root in 0..n {
            if self.mate[root] == NIL {
                let end = self.find_path(root);
                if end != NIL {
                    self.augment(end);
                }
            }
        }
        let mut out: Vec<usize> = (0..n)
            .filter(|&v| self.mate[v] != NIL && v < self.mate[v])
            .map(|v| {
                self.g
                    .edge_index(v, self.mate[v])
                    .expect("mate is a neighbor")
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn augment(&mut self, mut v: usize) {
        while v != NIL {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> usize {
        let n = self.g.n();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.queue.push(root);
        self.in_tree[root] = true;
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for idx in 0..self.g.degree(v) {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NIL && self.parent[self.mate[to]] != NIL) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if self.mate[to] == NIL {
                        return to;
                    }
                    let next = self.mate[to];
                    self.in_tree[next] = true;
                    self.queue.push(next);
                }
            }
        }
        NIL
    }
}

/// All perfect matchings; empty for odd order.
pub fn enumerate_perfect_matchings(g: &Graph) -> Vec<Matching> {
    if g.n() % 2 == 1 {
        return Vec::new();
    }
    enumerate_matchings(g, g.n() / 2)
}

/// Outcome of checking that every pair of edges is avoided by some perfect
/// matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchonbergerOutcome {
    pub perfect_matchings: usize,
    /// Lexicographically first pair `{e, f}`, `e < f`, that every perfect
    /// matching touches.
    pub failing_pair: Option<(usize, usize)>,
}

impl SchonbergerOutcome {
    pub fn holds(&self) -> bool {
        self.failing_pair.is_none()
    }
}

/// For every unordered pair of distinct edges, look for a perfect matching
/// containing neither.
pub fn schonberger_check(g: &Graph) -> Result<SchonbergerOutcome, MatchingError> {
    if g.m() < 2 {
        return Err(MatchingError::TooFewEdges(g.m()));
    }
    let pms = enumerate_perfect_matchings(g);
    let m = g.m();
    for e in 0..m {
        for f in e + 1..m {
            let pair = EdgeIndexSet::singleton(e).with(f);
            if !pms.iter().any(|pm| pm.edges().is_disjoint(pair)) {
                return Ok(SchonbergerOutcome {
                    perfect_matchings: pms.len(),
                    failing_pair: Some((e, f)),
                });
            }
        }
    }
    Ok(SchonbergerOutcome {
        perfect_matchings: pms.len(),
        failing_pair: None,
    })
}

/// Whether every two distinct matchings in the list share an edge.
pub fn matchings_pairwise_intersect(list: &[Matching]) -> bool {
    list.iter().enumerate().all(|(i, a)| {
        list[i + 1..]
            .iter()
            .all(|b| !a.edges().is_disjoint(b.edges()))
    })
}

/// Whether any two distinct perfect matchings share an edge. Vacuously true
/// with fewer than two.
pub fn perfect_matchings_pairwise_intersect(g: &Graph) -> bool {
    matchings_pairwise_intersect(&enumerate_perfect_matchings(g))
}
