//! Exact chromatic index and the snark predicate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// χ′ = Δ
    One,
    /// χ′ = Δ + 1
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoringResult {
    pub chromatic_index: usize,
    /// Color of each edge index, in `0..chromatic_index`.
    pub coloring: Vec<usize>,
    pub class: EdgeClass,
}

/// Whether `coloring` assigns distinct colors to edges sharing a vertex.
pub fn is_proper_edge_coloring(g: &Graph, coloring: &[usize]) -> bool {
    coloring.len() == g.m()
        && (0..g.n()).all(|v| {
            let mut seen: Vec<usize> = g.incident_edges(v).iter().map(|&e| coloring[e]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
}

/// Exact chromatic index with a witnessing proper coloring.
///
/// A Δ-coloring is searched for by backtracking over edges in index order,
/// colors ascending, with the star of the first maximum-degree vertex fixed
/// to colors `0..Δ`. When the search is exhausted the graph is class two and
/// a (Δ+1)-coloring is built by the Misra–Gries fan construction.
pub fn chromatic_index(g: &Graph) -> EdgeColoringResult {
    if g.m() == 0 {
        return EdgeColoringResult {
            chromatic_index: 0,
            coloring: Vec::new(),
            class: EdgeClass::One,
        };
    }
    let delta = g.max_degree();
    assert!(
        delta < 127,
        "maximum degree {delta} too large for color masks"
    );
    if let Some(coloring) = DeltaSearch::new(g, delta).solve() {
        return EdgeColoringResult {
            chromatic_index: delta,
            coloring,
            class: EdgeClass::One,
        };
    }
    let coloring = misra_gries(g);
    debug_assert!(is_proper_edge_coloring(g, &coloring));
    EdgeColoringResult {
        chromatic_index: delta + 1,
        coloring,
        class: EdgeClass::Two,
    }
}

/// Whether `g` admits a proper edge coloring with `k` colors, by the same
/// exhaustive backtracking used for the Δ test (no precoloring).
pub fn is_k_edge_colorable(g: &Graph, k: usize) -> bool {
    if g.m() == 0 {
        return true;
    }
    if k < g.max_degree() {
        return false;
    }
    assert!(k < 127);
    let mut search = DeltaSearch::new(g, k);
    search.color.iter_mut().for_each(|c| *c = NIL);
    search.used.iter_mut().for_each(|u| *u = 0);
    search.run(0)
}

struct DeltaSearch<'a> {
    g: &'a Graph,
    colors: usize,
    color: Vec<usize>,
    used: Vec<u128>,
}

impl<'a> DeltaSearch<'a> {
    fn new(g: &'a Graph, colors: usize) -> Self {
        let mut s = DeltaSearch {
            g,
            colors,
            color: vec![NIL; g.m()],
            used: vec![0; g.n()],
        };
        let v0 = (0..g.n())
            .find(|&v| g.degree(v) == g.max_degree())
            .expect("graph has edges");
        for (c, &e) in g.incident_edges(v0).iter().enumerate() {
            if c < colors {
                s.assign(e, c);
            }
        }
        s
    }

    fn solve(mut self) -> Option<Vec<usize>> {
        self.run(0).then_some(self.color)
    }

    #[inline]
    fn assign(&mut self, e: usize, c: usize) {
        let (u, v) = self.g.edge(e);
        self.color[e] = c;
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
    }

    #[inline]
    fn unassign(&mut self, e: usize, c: usize) {
        let (u, v) = self.g.edge(e);
        self.color[e] = NIL;
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
    }

    #[inline]
    fn available(&self, e: usize) -> u128 {
        let (u, v) = self.g.edge(e);
        !(self.used[u] | self.used[v]) & ((1u128 << self.colors) - 1)
    }

    /// Every uncolored edge at `x` still has a color left.
    fn viable_at(&self, x: usize) -> bool {
        self.g
            .incident_edges(x)
            .iter()
            .all(|&f| self.color[f] != NIL || self.available(f) != 0)
    }

    fn run(&mut self, start: usize) -> bool {
        let Some(e) = (start..self.g.m()).find(|&e| self.color[e] == NIL) else {
            return true;
        };
        let (u, v) = self.g.edge(e);
        let mut avail = self.available(e);
        while avail != 0 {
            let c = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            self.assign(e, c);
            if self.viable_at(u) && self.viable_at(v) && self.run(e + 1) {
                return true;
            }
            self.unassign(e, c);
        }
        false
    }
}

/// Proper edge coloring with at most Δ+1 colors (Misra & Gries).
pub fn misra_gries(g: &Graph) -> Vec<usize> {
    let palette = g.max_degree() + 1;
    let mut color = vec![NIL; g.m()];
    // at[v][c]: edge at v with color c
    let mut at = vec![vec![NIL; palette]; g.n()];

    let other = |e: usize, x: usize| {
        let (a, b) = g.edge(e);
        if a == x {
            b
        } else {
            a
        }
    };
    let free =
        |at: &Vec<Vec<usize>>, x: usize| at[x].iter().position(|&e| e == NIL).expect("Δ+1 colors");
    let set = |color: &mut Vec<usize>, at: &mut Vec<Vec<usize>>, e: usize, c: usize| {
        let (a, b) = g.edge(e);
        color[e] = c;
        at[a][c] = e;
        at[b][c] = e;
    };
    let clear = |color: &mut Vec<usize>, at: &mut Vec<Vec<usize>>, e: usize| {
        let c = color[e];
        if c != NIL {
            let (a, b) = g.edge(e);
            at[a][c] = NIL;
            at[b][c] = NIL;
            color[e] = NIL;
        }
    };

    for e0 in 0..g.m() {
        let (u, v0) = g.edge(e0);
        // maximal fan at u starting with v0
        let mut fan = vec![v0];
        let mut fan_edges = vec![e0];
        loop {
            let last = *fan.last().expect("nonempty");
            let next = g.incident_edges(u).iter().copied().find(|&f| {
                color[f] != NIL && !fan.contains(&other(f, u)) && at[last][color[f]] == NIL
            });
            match next {
                Some(f) => {
                    fan.push(other(f, u));
                    fan_edges.push(f);
                }
                None => break,
            }
        }
        let c = free(&at, u);
        let d = free(&at, *fan.last().expect("nonempty"));

        // invert the cd-path starting at u
        if c != d {
            let mut path = Vec::new();
            let mut x = u;
            let mut follow = d;
            while at[x][follow] != NIL {
                let f = at[x][follow];
                path.push((f, follow));
                x = other(f, x);
                follow = if follow == d { c } else { d };
            }
            for &(f, _) in &path {
                clear(&mut color, &mut at, f);
            }
            for &(f, was) in &path {
                set(&mut color, &mut at, f, if was == d { c } else { d });
            }
        }

        // first w with d free such that fan[..=w] is still a fan
        let mut w = 0;
        loop {
            if at[fan[w]][d] == NIL {
                break;
            }
            let next_ok = w + 1 < fan.len() && {
                let cn = color[fan_edges[w + 1]];
                cn != NIL && at[fan[w]][cn] == NIL
            };
            assert!(next_ok, "fan rotation invariant");
            w += 1;
        }

        // rotate fan[..=w]
        let shifted: Vec<usize> = (0..w).map(|j| color[fan_edges[j + 1]]).collect();
        for &f in &fan_edges[1..=w] {
            clear(&mut color, &mut at, f);
        }
        for (j, &cj) in shifted.iter().enumerate() {
            set(&mut color, &mut at, fan_edges[j], cj);
        }
        set(&mut color, &mut at, fan_edges[w], d);
    }
    color
}

/// The first failed clause of the snark definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum SnarkReason {
    NotConnected,
    HasBridges { bridges: Vec<usize> },
    NotCubic,
    ChromaticIndex { chromatic_index: usize },
}

impl fmt::Display for SnarkReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SnarkReason::NotConnected => write!(f, "not connected"),
            SnarkReason::HasBridges { bridges } => write!(f, "has bridges {bridges:?}"),
            SnarkReason::NotCubic => write!(f, "not cubic"),
            SnarkReason::ChromaticIndex { chromatic_index } => {
                write!(f, "chromatic index is {chromatic_index}, not 4")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnarkStatus {
    pub is_snark: bool,
    pub reason: Option<SnarkReason>,
}

/// Simple, connected, bridgeless, cubic, chromatic index four. Clauses are
/// checked in that order and the first failure is reported.
pub fn is_snark(g: &Graph) -> SnarkStatus {
    let fail = |reason| SnarkStatus {
        is_snark: false,
        reason: Some(reason),
    };
    if !g.is_connected() {
        return fail(SnarkReason::NotConnected);
    }
    let bridges = g.bridges();
    if !bridges.is_empty() {
        return fail(SnarkReason::HasBridges { bridges });
    }
    if !g.is_cubic() {
        return fail(SnarkReason::NotCubic);
    }
    let chi = chromatic_index(g).chromatic_index;
    if chi != 4 {
        return fail(SnarkReason::ChromaticIndex {
            chromatic_index: chi,
        });
    }
    SnarkStatus {
        is_snark: true,
        reason: None,
    }
}
