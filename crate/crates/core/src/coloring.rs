//! Exact vertex coloring of derived graphs and the star-family coloring that
//! realises the `|E| - ex` upper bound.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::extremal::ExtremalCertificate;
use crate::graph::Graph;
use crate::kneser::KneserGraph;
use crate::matchings::Matching;
use crate::star_cover::{certify_lower_bound, CoverOutcome};

/// Default branch-and-bound node budget.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest clique the exact clique search tries to reach.
const CLIQUE_SEARCH_CAP: usize = 8;
const CLIQUE_SEARCH_NODES: u64 = 1_000_000;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("node budget of {budget} exhausted; chromatic number in [{lower}, {upper}]")]
    BudgetExhausted {
        budget: u64,
        lower: usize,
        upper: usize,
        /// Best coloring found, with `upper` colors.
        best: Coloring,
    },
    #[error("extremal certificate contains an r-matching: edges {:?}", .matching.edges().to_vec())]
    InvalidCertificate { matching: Matching },
    #[error("certificate is for r = {certificate}, graph was built for r = {graph}")]
    MismatchedR { certificate: usize, graph: usize },
}

/// A proper vertex coloring using every color in `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    /// Relabels arbitrary color values onto `0..k`, keeping their relative
    /// order.
    pub fn compact(raw: &[usize]) -> Self {
        let mut used: Vec<usize> = raw.to_vec();
        used.sort_unstable();
        used.dedup();
        let colors = raw
            .iter()
            .map(|c| used.binary_search(c).expect("present"))
            .collect();
        Coloring {
            colors,
            k: used.len(),
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Number of colors used.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && g.edges()
                .iter()
                .all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    /// Proper for `g` and every color in `0..k` used.
    pub fn validates(&self, g: &Graph) -> bool {
        let mut seen = vec![false; self.k];
        for &c in &self.colors {
            if c >= self.k {
                return false;
            }
            seen[c] = true;
        }
        seen.into_iter().all(|s| s) && self.is_proper(g)
    }
}

/// What established the lower end of an exact chromatic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundSource {
    /// The returned coloring has as many colors as the clique has vertices.
    Clique,
    /// The star-cover inequality of [`crate::star_cover`].
    StarCover,
    /// Branch-and-bound exhausted every coloring with fewer colors.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chromatic_number: usize,
    pub coloring: Coloring,
    /// The clique used as the initial lower bound.
    pub clique: Vec<usize>,
    pub source: LowerBoundSource,
    pub nodes: u64,
}

fn trivial(n: usize) -> ChromaticResult {
    ChromaticResult {
        chromatic_number: n.min(1),
        coloring: Coloring {
            colors: vec![0; n],
            k: n.min(1),
        },
        clique: if n == 0 { Vec::new() } else { vec![0] },
        source: LowerBoundSource::Clique,
        nodes: 0,
    }
}

/// Exact `χ(KG(G, rK2))`.
///
/// As [`chromatic_number`], with two additions: `hint` (typically the
/// coloring from [`greedy_ex_coloring`]) replaces the DSATUR upper bound
/// when it is proper and smaller, and the star-cover bound is tried before
/// branch-and-bound. `budget` applies to each phase separately.
pub fn kneser_chromatic_number(
    kg: &KneserGraph,
    budget: u64,
    hint: Option<&Coloring>,
) -> Result<ChromaticResult, ColoringError> {
    let g = kg.graph();
    if g.m() == 0 {
        return Ok(trivial(g.n()));
    }
    let clique = lower_bound_clique(g);
    let mut start = dsatur_greedy(g);
    if let Some(h) = hint {
        if h.validates(g) && h.k < start.k {
            start = h.clone();
        }
    }
    let mut lower = clique.len();
    let mut nodes = 0;
    if lower < start.k {
        for target in [start.k, start.k - 1] {
            if target <= lower {
                break;
            }
            let rep = certify_lower_bound(kg, target, budget);
            nodes += rep.nodes;
            if rep.outcome == CoverOutcome::Proved {
                lower = target;
                break;
            }
        }
        if lower == start.k {
            return Ok(ChromaticResult {
                chromatic_number: start.k,
                coloring: start,
                clique,
                source: LowerBoundSource::StarCover,
                nodes,
            });
        }
    }
    let source = if lower > clique.len() {
        LowerBoundSource::StarCover
    } else {
        LowerBoundSource::Search
    };
    branch_and_bound(g, clique, lower, start, budget, nodes, source)
}

/// Exact chromatic number. The null graph has χ = 0, an edgeless nonempty
/// graph χ = 1.
///
/// Lower bound from a clique (greedy, then exact search capped at eight
/// vertices); DSATUR gives the first upper bound; DSATUR-ordered
/// branch-and-bound closes the gap. Ties in vertex selection go to higher
/// saturation, then higher degree, then lower index.
pub fn chromatic_number(g: &Graph, budget: u64) -> Result<ChromaticResult, ColoringError> {
    if g.m() == 0 {
        return Ok(trivial(g.n()));
    }
    let clique = lower_bound_clique(g);
    let lower = clique.len();
    let start = dsatur_greedy(g);
    branch_and_bound(g, clique, lower, start, budget, 0, LowerBoundSource::Search)
}

fn branch_and_bound(
    g: &Graph,
    clique: Vec<usize>,
    lower: usize,
    start: Coloring,
    budget: u64,
    nodes: u64,
    source: LowerBoundSource,
) -> Result<ChromaticResult, ColoringError> {
    let mut search = Dsatur::new(g, start.k, &clique, lower, budget);
    search.best = start.colors;
    if search.best_k > lower {
        search.run();
    }
    let coloring = Coloring::compact(&search.best);
    if search.aborted {
        return Err(ColoringError::BudgetExhausted {
            budget,
            lower,
            upper: coloring.k,
            best: coloring,
        });
    }
    debug_assert!(coloring.validates(g));
    let source = if coloring.k <= clique.len() {
        LowerBoundSource::Clique
    } else if coloring.k <= lower {
        source
    } else {
        LowerBoundSource::Search
    };
    Ok(ChromaticResult {
        chromatic_number: coloring.k,
        coloring,
        clique,
        source,
        nodes: nodes + search.nodes,
    })
}

/// A clique: greedy by degree, then improved by exact search until one with
/// `CLIQUE_SEARCH_CAP` vertices is found or the search ends.
pub fn lower_bound_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let adj: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = Bits::new(n);
            for &w in g.neighbors(v) {
                b.set(w);
            }
            b
        })
        .collect();

    let start = (0..n)
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .expect("n > 0");
    let mut greedy = vec![start];
    let mut cand = adj[start].and(&adj[start]);
    while let Some(v) = cand
        .iter()
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
    {
        greedy.push(v);
        cand = cand.and(&adj[v]);
    }
    if greedy.len() >= CLIQUE_SEARCH_CAP {
        return greedy;
    }

    struct Search<'a> {
        adj: &'a [Bits],
        best: Vec<usize>,
        nodes: u64,
    }
    impl Search<'_> {
        fn go(&mut self, current: &mut Vec<usize>, cand: Bits) {
            self.nodes += 1;
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            if self.best.len() >= CLIQUE_SEARCH_CAP || self.nodes > CLIQUE_SEARCH_NODES {
                return;
            }
            if current.len() + cand.count() <= self.best.len() {
                return;
            }
            let mut cand = cand;
            let order: Vec<usize> = cand.iter().collect();
            for v in order {
                if current.len() + cand.count() <= self.best.len() {
                    return;
                }
                let next = cand.and(&self.adj[v]);
                current.push(v);
                self.go(current, next);
                current.pop();
                cand.clear(v);
                if self.best.len() >= CLIQUE_SEARCH_CAP || self.nodes > CLIQUE_SEARCH_NODES {
                    return;
                }
            }
        }
    }
    let mut all = Bits::new(n);
    for v in 0..n {
        all.set(v);
    }
    let mut s = Search {
        adj: &adj,
        best: greedy,
        nodes: 0,
    };
    s.go(&mut Vec::new(), all);
    debug_assert!(s
        .best
        .iter()
        .enumerate()
        .all(|(i, &a)| s.best[i + 1..].iter().all(|&b| adj[a].get(b))));
    s.best
}

/// One DSATUR pass without backtracking.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![NONE; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == NONE)
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex left");
        let c = (0..)
            .find(|&c| !seen[v].get(c).copied().unwrap_or(false))
            .expect("color");
        colors[v] = c;
        for &w in g.neighbors(v) {
            let s = &mut seen[w];
            if s.len() <= c {
                s.resize(c + 1, false);
            }
            if !s[c] {
                s[c] = true;
                sat[w] += 1;
            }
        }
    }
    Coloring::compact(&colors)
}

struct Dsatur<'a> {
    g: &'a Graph,
    n: usize,
    color: Vec<usize>,
    /// count[v * width + c]: neighbors of v with color c
    count: Vec<u32>,
    width: usize,
    sat: Vec<usize>,
    colored: usize,
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, upper: usize, clique: &[usize], lower: usize, budget: u64) -> Self {
        let n = g.n();
        let mut s = Dsatur {
            g,
            n,
            color: vec![NONE; n],
            count: vec![0; n * upper],
            width: upper,
            sat: vec![0; n],
            colored: 0,
            best: Vec::new(),
            best_k: upper,
            lower,
            nodes: 0,
            budget,
            aborted: false,
        };
        for (c, &v) in clique.iter().enumerate() {
            if c < upper {
                s.assign(v, c);
            }
        }
        s
    }

    #[inline]
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.colored += 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.count[w * self.width + c];
            *slot += 1;
            if *slot == 1 {
                self.sat[w] += 1;
            }
        }
    }

    #[inline]
    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = NONE;
        self.colored -= 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.count[w * self.width + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn select(&self) -> usize {
        let mut best = NONE;
        let mut key = (0, 0);
        for v in 0..self.n {
            if self.color[v] != NONE {
                continue;
            }
            let k = (self.sat[v], self.g.degree(v));
            if best == NONE || k > key {
                best = v;
                key = k;
            }
        }
        best
    }

    fn used_colors(&self) -> usize {
        self.color
            .iter()
            .filter(|&&c| c != NONE)
            .map(|&c| c + 1)
            .max()
            .unwrap_or(0)
    }

    fn run(&mut self) {
        let used = self.used_colors();
        self.go(used);
    }

    /// Tries to finish the partial coloring with fewer than `best_k` colors.
    /// Returns true when the search must stop.
    fn go(&mut self, used: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return true;
        }
        if self.colored == self.n {
            self.best_k = used;
            self.best = self.color.clone();
            return self.best_k <= self.lower;
        }
        let v = self.select();
        // colors allowed: 0..min(used + 1, best_k - 1)
        let limit = (used + 1).min(self.best_k - 1);
        for c in 0..limit {
            if c >= self.best_k - 1 {
                break;
            }
            if self.count[v * self.width + c] > 0 {
                continue;
            }
            self.assign(v, c);
            let stop = self.go(used.max(c + 1));
            self.unassign(v, c);
            if stop {
                return true;
            }
        }
        false
    }
}

/// Exhaustive k-colorability by plain backtracking in vertex order with
/// first-use color symmetry breaking. Independent of the DSATUR search; used
/// to re-validate lower bounds. `None` on budget exhaustion.
pub fn k_colorable(g: &Graph, k: usize, budget: u64) -> Option<Option<Coloring>> {
    fn go(
        g: &Graph,
        k: usize,
        colors: &mut Vec<usize>,
        v: usize,
        max_used: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        if v == g.n() {
            return Some(true);
        }
        for c in 0..k.min(max_used + 1) {
            if g.neighbors(v).iter().any(|&w| w < v && colors[w] == c) {
                continue;
            }
            colors[v] = c;
            if go(g, k, colors, v + 1, max_used.max(c + 1), nodes, budget)? {
                return Some(true);
            }
        }
        colors[v] = NONE;
        Some(false)
    }
    let mut colors = vec![NONE; g.n()];
    let mut nodes = 0;
    let found = go(g, k, &mut colors, 0, 0, &mut nodes, budget)?;
    Some(found.then(|| Coloring::compact(&colors)))
}

/// Colors each r-matching by the smallest edge index it contains outside the
/// certificate's edge set. Matchings sharing that edge are never adjacent,
/// so the result is proper with at most `m - |F|` colors. Colors are then
/// compacted in edge order.
pub fn greedy_ex_coloring(
    kg: &KneserGraph,
    extremal: &ExtremalCertificate,
) -> Result<Coloring, ColoringError> {
    if extremal.r != kg.r() {
        return Err(ColoringError::MismatchedR {
            certificate: extremal.r,
            graph: kg.r(),
        });
    }
    let mut raw = Vec::with_capacity(kg.vertex_count());
    for mm in kg.vertices() {
        match mm.edges().difference(extremal.edges).first() {
            Some(e) => raw.push(e),
            None => return Err(ColoringError::InvalidCertificate { matching: *mm }),
        }
    }
    Ok(Coloring::compact(&raw))
}
