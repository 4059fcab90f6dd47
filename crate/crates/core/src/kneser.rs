//! Matching Kneser graphs `KG(G, rK2)` and classical Kneser graphs `KG(n, r)`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::disjoint_matching;
use crate::graph::Graph;
use crate::matchings::{enumerate_matchings, Matching};

/// Vertex count above which the disjointness pass is split across threads.
const PARALLEL_THRESHOLD: usize = 2048;

/// Largest order for which [`graphs_equivalent`] decides isomorphism exactly.
pub const EXACT_ISOMORPHISM_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KneserError {
    #[error("matching size r must be at least 1")]
    ZeroR,
    #[error("base graph has {0} edges; edge masks hold at most 128")]
    TooManyEdges(usize),
}

/// `KG(G, rK2)`: one vertex per r-matching of `base`, adjacent when the two
/// matchings share no edge. Vertex `i` is the `i`-th matching in
/// lexicographic enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneserGraph {
    base: Graph,
    r: usize,
    vertices: Vec<Matching>,
    adjacency: Graph,
}

impl KneserGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertices(&self) -> &[Matching] {
        &self.vertices
    }

    /// The derived graph on `0..vertices().len()`.
    pub fn graph(&self) -> &Graph {
        &self.adjacency
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.m()
    }

    /// Renders the graph in DOT. Node `i` is labeled with the endpoint
    /// pairs of matching `i`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph KG {{");
        for (i, mm) in self.vertices.iter().enumerate() {
            let label = mm
                .endpoints(&self.base)
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(out, "  {i} [label=\"{label}\"];");
        }
        for &(a, b) in self.adjacency.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

fn disjointness_graph(vertices: &[Matching]) -> Graph {
    let k = vertices.len();
    let row = |i: usize| -> Vec<(usize, usize)> {
        let a = vertices[i].edges();
        (i + 1..k)
            .filter(|&j| a.is_disjoint(vertices[j].edges()))
            .map(|j| (i, j))
            .collect()
    };
    let edges: Vec<(usize, usize)> = if k >= PARALLEL_THRESHOLD {
        (0..k).into_par_iter().flat_map_iter(row).collect()
    } else {
        (0..k).flat_map(row).collect()
    };
    Graph::from_sorted_unchecked(k, edges)
}

/// Builds `KG(g, rK2)`. A graph without r-matchings gives the null graph.
pub fn build_matching_kneser(g: &Graph, r: usize) -> Result<KneserGraph, KneserError> {
    if r == 0 {
        return Err(KneserError::ZeroR);
    }
    if !g.fits_edge_mask() {
        return Err(KneserError::TooManyEdges(g.m()));
    }
    let vertices = enumerate_matchings(g, r);
    let adjacency = disjointness_graph(&vertices);
    Ok(KneserGraph {
        base: g.clone(),
        r,
        vertices,
        adjacency,
    })
}

/// Classical `KG(n, r)` on the r-subsets of `0..n`, realised as the
/// r-matchings of `nK2` so that subset `{i, ..}` is the matching on edges
/// `{i, ..}`.
pub fn build_kneser(n: usize, r: usize) -> Result<KneserGraph, KneserError> {
    build_matching_kneser(&disjoint_matching(n), r)
}

/// Result of comparing two graphs up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// False when only vertex count, edge count and degree sequence were
    /// compared.
    pub exact: bool,
}

pub fn structurally_equivalent(a: &KneserGraph, b: &KneserGraph) -> Equivalence {
    graphs_equivalent(a.graph(), b.graph())
}

/// Exact isomorphism test up to [`EXACT_ISOMORPHISM_LIMIT`] vertices;
/// invariant comparison above it.
pub fn graphs_equivalent(a: &Graph, b: &Graph) -> Equivalence {
    let exact = a.n() <= EXACT_ISOMORPHISM_LIMIT && b.n() <= EXACT_ISOMORPHISM_LIMIT;
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if a.n() != b.n() || a.m() != b.m() || da != db {
        return Equivalence {
            equivalent: false,
            exact,
        };
    }
    let equivalent = if exact {
        find_isomorphism(a, b).is_some()
    } else {
        true
    };
    Equivalence { equivalent, exact }
}

/// A vertex bijection `map` with `u ~ v` in `a` iff `map[u] ~ map[v]` in
/// `b`, by backtracking with degree filtering.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let u = map.len();
        if u == a.n() {
            return true;
        }
        for x in 0..b.n() {
            if used[x] || a.degree(u) != b.degree(x) {
                continue;
            }
            let consistent = (0..u).all(|w| a.has_edge(u, w) == b.has_edge(x, map[w]));
            if !consistent {
                continue;
            }
            used[x] = true;
            map.push(x);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[x] = false;
        }
        false
    }
    if a.n() != b.n() || a.m() != b.m() {
        return None;
    }
    let mut map = Vec::with_capacity(a.n());
    let mut used = vec![false; b.n()];
    extend(a, b, &mut map, &mut used).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, petersen, star};

    #[test]
    fn petersen_perfect_matchings_form_edgeless_kg() {
        let kg = build_matching_kneser(&petersen(), 5).unwrap();
        assert_eq!((kg.vertex_count(), kg.edge_count()), (6, 0));
    }

    #[test]
    fn c5_two_matchings_form_a_five_cycle() {
        let kg = build_matching_kneser(&cycle(5).unwrap(), 2).unwrap();
        assert_eq!((kg.vertex_count(), kg.edge_count()), (5, 5));
        assert_eq!(kg.graph().degrees(), vec![2; 5]);
        assert!(graphs_equivalent(kg.graph(), &cycle(5).unwrap()).equivalent);
    }

    #[test]
    fn star_has_no_two_matchings() {
        let kg = build_matching_kneser(&star(3), 2).unwrap();
        assert_eq!(kg.vertex_count(), 0);
        assert_eq!(build_matching_kneser(&star(3), 0), Err(KneserError::ZeroR));
    }

    #[test]
    fn classical_kneser_examples() {
        let k52 = build_kneser(5, 2).unwrap();
        assert_eq!((k52.vertex_count(), k52.edge_count()), (10, 15));
        assert_eq!(k52.graph().degrees(), vec![3; 10]);
        let k32 = build_kneser(3, 2).unwrap();
        assert_eq!((k32.vertex_count(), k32.edge_count()), (3, 0));
        let k42 = build_kneser(4, 2).unwrap();
        assert_eq!((k42.vertex_count(), k42.edge_count()), (6, 3));
        assert_eq!(build_kneser(2, 3).unwrap().vertex_count(), 0);
    }

    #[test]
    fn equivalence_examples() {
        let a = build_matching_kneser(&disjoint_matching(5), 2).unwrap();
        let b = build_kneser(5, 2).unwrap();
        assert_eq!(
            structurally_equivalent(&a, &b),
            Equivalence {
                equivalent: true,
                exact: true
            }
        );
        let pet = graphs_equivalent(b.graph(), &petersen());
        assert!(pet.equivalent && pet.exact);
        let c6 = graphs_equivalent(build_kneser(4, 2).unwrap().graph(), &cycle(6).unwrap());
        assert!(!c6.equivalent);
        // same degree sequence, different graphs: C6 vs two triangles
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!graphs_equivalent(&cycle(6).unwrap(), &two_triangles).equivalent);
    }

    #[test]
    fn dot_export() {
        let kg = build_matching_kneser(&cycle(5).unwrap(), 2).unwrap();
        let dot = kg.to_dot();
        assert!(dot.starts_with("graph KG {\n"));
        assert_eq!(dot.matches(" -- ").count(), 5);
        assert_eq!(dot.matches("[label=").count(), 5);
        assert!(dot.contains("  0 [label=\"0-1 2-3\"];"));
    }
}
