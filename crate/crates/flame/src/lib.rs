//! Rooted edge-connectivity toolkit.
//!
//! A rooted digraph `D = (V + r, E)` is a *flame* if for every vertex
//! `v ∈ V` the in-degree of `v` equals the local edge-connectivity
//! `λ(r, v)` (the maximum number of edge-disjoint paths from the root to
//! `v`). Every digraph has a spanning subgraph that is a flame and
//! preserves all `λ(r, v)` values; such subgraphs have exactly
//! `Σ_v λ(r, v)` edges and are called *maximal flames*.
//!
//! The crate provides:
//!
//! - [`graph`]: the immutable multigraph, text/JSON formats, subgraph views;
//! - [`connectivity`]: edge-disjoint path computation and the minimal and
//!   maximal tight sets `T_v`, `M_v`;
//! - [`flame`]: flame recognition and maximal-flame construction by
//!   deletion (peel) or augmentation (grow);
//! - [`gammoid`]: the per-vertex matroid on in-edges, matroid greedy and
//!   the minimum-weight maximal flame for acyclic digraphs;
//! - [`decompose`]: decomposition of a flame into a chain of edge-disjoint
//!   branchings whose prefixes are flames, and the contracted-graph
//!   spanning-tree verifier;
//! - [`oracle`]: independent brute-force oracles, exhaustive axiom
//!   checkers and the seeded instance generator used by the test suites;
//! - [`cli`]: the `flame` command-line interface.

pub mod cli;
pub mod connectivity;
pub mod decompose;
pub mod dot;
pub mod error;
pub mod flame;
pub mod gammoid;
pub mod graph;
pub mod invariants;
pub mod oracle;
mod union_find;
pub mod weight;

#[cfg(test)]
pub(crate) mod test_graphs;

pub use error::{Error, ParseError};
pub use graph::{
    entering_edge_ids, is_acyclic, rho, subgraph_view, Digraph, EdgeSet, RootedDigraph,
    SubgraphView, VertexSet,
};
pub use weight::Weight;
