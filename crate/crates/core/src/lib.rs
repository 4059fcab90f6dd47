//! Matching Kneser graphs `KG(G, rK2)`, their chromatic numbers, the
//! extremal number `ex(G, rK2)`, and certified snark counterexamples to the
//! equality `χ(KG(G, rK2)) = |E(G)| - ex(G, rK2)`.

mod bits;
pub mod coloring;
pub mod edge_coloring;
pub mod edge_set;
pub mod extremal;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod kneser;
pub mod matchings;
pub mod star_cover;
pub mod verifier;

pub use edge_set::{EdgeIndexSet, MAX_EDGES};
pub use graph::{Graph, GraphError};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};
