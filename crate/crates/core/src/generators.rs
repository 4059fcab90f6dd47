//! Named graph families used as fixtures and reference instances.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameter in `{0}`")]
    BadParameter(String),
}

/// A parameterised graph family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Petersen,
    Cycle(usize),
    Complete(usize),
    /// `K_{1,k}` with the hub at vertex 0.
    Star(usize),
    /// `nK_2`: edges `{2i, 2i+1}`.
    DisjointMatching(usize),
    Path(usize),
}

impl Family {
    pub fn generate(self) -> Result<Graph, GeneratorError> {
        Ok(match self {
            Family::Petersen => petersen(),
            Family::Cycle(n) => cycle(n)?,
            Family::Complete(n) => complete(n),
            Family::Star(k) => star(k),
            Family::DisjointMatching(n) => disjoint_matching(n),
            Family::Path(n) => path(n),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Petersen => write!(f, "petersen"),
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::Star(k) => write!(f, "star({k})"),
            Family::DisjointMatching(n) => write!(f, "disjoint_matching({n})"),
            Family::Path(n) => write!(f, "path({n})"),
        }
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    /// Accepts `petersen`, `cycle(5)`, `complete(4)`, `star(3)`,
    /// `disjoint_matching(5)` and `path(3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "petersen" {
            return Ok(Family::Petersen);
        }
        let (name, rest) = s
            .split_once('(')
            .ok_or_else(|| GeneratorError::UnknownFamily(s.to_string()))?;
        let arg: usize = rest
            .strip_suffix(')')
            .and_then(|a| a.trim().parse().ok())
            .ok_or_else(|| GeneratorError::BadParameter(s.to_string()))?;
        match name.trim() {
            "cycle" => Ok(Family::Cycle(arg)),
            "complete" => Ok(Family::Complete(arg)),
            "star" => Ok(Family::Star(arg)),
            "disjoint_matching" => Ok(Family::DisjointMatching(arg)),
            "path" => Ok(Family::Path(arg)),
            _ => Err(GeneratorError::UnknownFamily(s.to_string())),
        }
    }
}

/// Outer 5-cycle on `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("petersen edges are simple")
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::CycleTooShort(n));
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple"))
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted_unchecked(n, edges)
}

pub fn star(k: usize) -> Graph {
    Graph::from_sorted_unchecked(k + 1, (1..=k).map(|v| (0, v)).collect())
}

pub fn disjoint_matching(n: usize) -> Graph {
    Graph::from_sorted_unchecked(2 * n, (0..n).map(|i| (2 * i, 2 * i + 1)).collect())
}

pub fn path(n: usize) -> Graph {
    Graph::from_sorted_unchecked(n, (1..n).map(|v| (v - 1, v)).collect())
}
