//! Independent reference implementations used as test oracles. Deliberately
//! naive: nothing here calls into the search code under test.

#![allow(dead_code)]

use std::path::PathBuf;

use mkg_core::matchings::Matching;
use mkg_core::{parse_graph6, Graph};
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

/// Non-blank lines of a fixture with their parsed graphs.
pub fn read_fixture(name: &str) -> Vec<(String, Graph)> {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| (l.to_string(), parse_graph6(l).expect("fixture parses")))
        .collect()
}

fn adjacency_masks(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for (u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Maximum matching by trying every way to treat the lowest free vertex.
fn nu_masks(adj: &[u64], free: u64) -> usize {
    if free == 0 {
        return 0;
    }
    let v = free.trailing_zeros() as usize;
    let rest = free & !(1 << v);
    let mut best = nu_masks(adj, rest);
    let mut partners = adj[v] & rest;
    while partners != 0 {
        let u = partners.trailing_zeros() as usize;
        partners &= partners - 1;
        best = best.max(1 + nu_masks(adj, rest & !(1 << u)));
    }
    best
}

pub fn brute_matching_number(g: &Graph) -> usize {
    let adj = adjacency_masks(g.n(), g.edges().iter().copied());
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    nu_masks(&adj, all)
}

/// `profile[r] = ex(G, rK2)` for `r` in `1..=ν(G) + 1`, from all `2^m`
/// edge subsets. `profile[0]` is unused.
pub fn brute_ex_profile(g: &Graph) -> Vec<usize> {
    let m = g.m();
    assert!(m <= 20, "2^m enumeration");
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let nu_g = brute_matching_number(g);
    // best[k]: largest subset with matching number exactly k
    let mut best = vec![0usize; nu_g + 1];
    for mask in 0u32..(1 << m) {
        let edges = (0..m).filter(|e| mask >> e & 1 == 1).map(|e| g.edge(e));
        let adj = adjacency_masks(g.n(), edges);
        let k = nu_masks(&adj, all);
        best[k] = best[k].max(mask.count_ones() as usize);
    }
    let mut profile = vec![0; nu_g + 2];
    for r in 1..=nu_g + 1 {
        profile[r] = best[..r].iter().copied().max().unwrap_or(0);
    }
    profile
}

pub fn brute_ex(g: &Graph, r: usize) -> usize {
    let p = brute_ex_profile(g);
    p[r.min(p.len() - 1)]
}

/// All r-subsets of edges that are matchings, as sorted edge-index lists.
pub fn brute_matchings(g: &Graph, r: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for e in start..g.m() {
            let (a, b) = g.edge(e);
            let clash = cur.iter().any(|&f| {
                let (c, d) = g.edge(f);
                a == c || a == d || b == c || b == d
            });
            if !clash {
                cur.push(e);
                go(g, r, e + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, r, 0, &mut Vec::new(), &mut out);
    out
}

pub fn brute_count_matchings(g: &Graph, r: usize) -> usize {
    brute_matchings(g, r).len()
}

fn disjoint_lists(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Graph on the given sets, adjacent when disjoint.
fn disjointness(sets: &[Vec<usize>]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if disjoint_lists(&sets[i], &sets[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(sets.len(), edges).unwrap()
}

pub fn brute_kneser(g: &Graph, r: usize) -> Graph {
    disjointness(&brute_matchings(g, r))
}

/// Classical Kneser graph on r-subsets of `0..n` in lexicographic order.
pub fn subset_kneser(n: usize, r: usize) -> Graph {
    fn go(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(n, r, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    go(n, r, 0, &mut Vec::new(), &mut sets);
    disjointness(&sets)
}

/// Smallest k admitting a proper coloring, by vertex-order backtracking.
/// Vertex `v` may open at most one new color, which only removes relabelings.
pub fn brute_chromatic_number(g: &Graph) -> usize {
    fn colorable(g: &Graph, k: usize, v: usize, opened: usize, col: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k.min(opened + 1) {
            if g.neighbors(v).iter().all(|&w| w >= v || col[w] != c) {
                col[v] = c;
                if colorable(g, k, v + 1, opened.max(c + 1), col) {
                    return true;
                }
            }
        }
        false
    }
    (0..=g.n())
        .find(|&k| colorable(g, k, 0, 0, &mut vec![usize::MAX; g.n()]))
        .expect("n colors always suffice")
}

pub fn kneser_chi_oracle(g: &Graph, r: usize) -> usize {
    brute_chromatic_number(&brute_kneser(g, r))
}

pub fn brute_pairwise_intersecting(list: &[Matching]) -> bool {
    list.iter().enumerate().all(|(i, a)| {
        list[i + 1..]
            .iter()
            .all(|b| a.edges().to_vec().iter().any(|e| b.edges().contains(*e)))
    })
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

pub fn brute_connected(g: &Graph) -> bool {
    components(g.n(), g.edges().iter().copied()) <= 1
}

/// Edges whose removal increases the number of components.
pub fn brute_bridges(g: &Graph) -> Vec<usize> {
    let base = components(g.n(), g.edges().iter().copied());
    (0..g.m())
        .filter(|&e| {
            let rest = g
                .edges()
                .iter()
                .enumerate()
                .filter(|&(f, _)| f != e)
                .map(|(_, &p)| p);
            components(g.n(), rest) > base
        })
        .collect()
}

/// Three-edge-colorability by backtracking over edges in index order.
pub fn brute_three_edge_colorable(g: &Graph) -> bool {
    fn go(g: &Graph, e: usize, col: &mut Vec<u8>) -> bool {
        if e == g.m() {
            return true;
        }
        let (u, v) = g.edge(e);
        for c in 0..3u8 {
            let clash = (0..e).any(|f| {
                let (a, b) = g.edge(f);
                col[f] == c && (a == u || a == v || b == u || b == v)
            });
            if !clash {
                col[e] = c;
                if go(g, e + 1, col) {
                    return true;
                }
            }
        }
        false
    }
    go(g, 0, &mut vec![0; g.m()])
}

/// Straight transcription of the graph6 short form.
pub fn oracle_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62);
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        out.push((v + 63) as char);
    }
    out
}

pub fn random_graph_of_order<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let p: f64 = rng.gen_range(0.0..1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(0..=max_n);
    random_graph_of_order(rng, n)
}
