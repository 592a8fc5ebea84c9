//! Immutable rooted multigraph with stable integer edge ids.
//!
//! A graph is written `D = (V + r, E)`: `r` is the root and `V` is every
//! other vertex. Edge ids are 0-based positions in the edge list and never
//! change; parallel edges are distinguished by id; self-loops are rejected.
//! Edges whose head is the root are accepted but flagged — the flame
//! algorithms never select them.
//!
//! Text format (UTF-8, LF or CRLF, `#` starts a comment line):
//!
//! ```text
//! digraph <n> <m> <root>
//! <tail> <head> [<weight>]
//! ```
//!
//! with one line per edge. Weights are nonnegative decimals with at most
//! nine fractional digits and default to 1. Canonical serialization prints
//! edges in id order, omits weight 1 and trailing zeros.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, ParseError};
use crate::weight::{Weight, WeightParseError};

/// Set of edge ids; canonical order is ascending.
pub type EdgeSet = BTreeSet<usize>;
/// Set of vertex indices; canonical order is ascending.
pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Clone)]
pub struct RootedDigraph {
    n: usize,
    root: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<Weight>,
    in_adj: Vec<Vec<usize>>,
    out_adj: Vec<Vec<usize>>,
}

impl RootedDigraph {
    /// Builds a graph with unit weights.
    pub fn new(
        n: usize,
        root: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        Self::with_weights(
            n,
            root,
            edges.into_iter().map(|(t, h)| (t, h, Weight::ONE)),
        )
    }

    pub fn with_weights(
        n: usize,
        root: usize,
        edges: impl IntoIterator<Item = (usize, usize, Weight)>,
    ) -> Result<Self, Error> {
        if root >= n {
            return Err(Error::VertexOutOfRange(root));
        }
        let mut g = RootedDigraph {
            n,
            root,
            edges: Vec::new(),
            weights: Vec::new(),
            in_adj: vec![Vec::new(); n],
            out_adj: vec![Vec::new(); n],
        };
        for (id, (tail, head, w)) in edges.into_iter().enumerate() {
            if tail >= n {
                return Err(Error::VertexOutOfRange(tail));
            }
            if head >= n {
                return Err(Error::VertexOutOfRange(head));
            }
            if tail == head {
                return Err(Error::SelfLoop { edge: id });
            }
            g.edges.push((tail, head));
            g.weights.push(w);
            g.out_adj[tail].push(id);
            g.in_adj[head].push(id);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(tail, head)` of edge `e`. Panics on an out-of-range id.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn weight(&self, e: usize) -> Weight {
        self.weights[e]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// True for the flagged edges whose head is the root.
    pub fn enters_root(&self, e: usize) -> bool {
        self.edges[e].1 == self.root
    }

    /// Ids of edges entering `v`, ascending.
    pub fn in_edge_ids(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// Ids of edges leaving `v`, ascending.
    pub fn out_edge_ids(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// All vertices except the root, ascending (the set `V`).
    pub fn non_root_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| v != self.root)
    }

    /// Every edge id whose head is not the root; the starting point for
    /// flame construction.
    pub fn edges_avoiding_root(&self) -> EdgeSet {
        (0..self.edge_count())
            .filter(|&e| !self.enters_root(e))
            .collect()
    }

    /// Parses the text format. Edge ids follow file order.
    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut lines = input
            .lines()
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

        let (header_line, header) = lines.next().ok_or(ParseError::MalformedHeader {
            line: 1,
            reason: "empty input".into(),
        })?;
        let mut tokens = header.split_whitespace();
        let malformed = |reason: &str| ParseError::MalformedHeader {
            line: header_line,
            reason: reason.into(),
        };
        if tokens.next() != Some("digraph") {
            return Err(malformed("expected `digraph <n> <m> <root>`"));
        }
        let n: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| malformed("bad vertex count"))?;
        let m: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| malformed("bad edge count"))?;
        let root: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| malformed("bad root"))?;
        if tokens.next().is_some() {
            return Err(malformed("trailing tokens"));
        }
        if n == 0 {
            return Err(malformed("vertex count must be positive"));
        }
        if root >= n {
            return Err(ParseError::VertexOutOfRange {
                line: header_line,
                vertex: root,
                n,
            });
        }

        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            if edges.len() == m {
                return Err(ParseError::TooManyEdges { line, expected: m });
            }
            let mut tokens = text.split_whitespace();
            let malformed = |reason: &str| ParseError::MalformedEdge {
                line,
                reason: reason.into(),
            };
            let tail: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| malformed("bad tail"))?;
            let head: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| malformed("bad head"))?;
            let weight = match tokens.next() {
                None => Weight::ONE,
                Some(t) => t.parse().map_err(|e| match e {
                    WeightParseError::Negative => ParseError::NegativeWeight { line },
                    WeightParseError::TooManyFractionDigits => {
                        ParseError::TooManyFractionDigits { line }
                    }
                    WeightParseError::Overflow => ParseError::WeightOverflow { line },
                    WeightParseError::Malformed => ParseError::MalformedEdge {
                        line,
                        reason: "malformed weight".into(),
                    },
                })?,
            };
            if tokens.next().is_some() {
                return Err(malformed("trailing tokens"));
            }
            if tail >= n {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    vertex: tail,
                    n,
                });
            }
            if head >= n {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    vertex: head,
                    n,
                });
            }
            if tail == head {
                return Err(ParseError::SelfLoop { line, vertex: tail });
            }
            edges.push((tail, head, weight));
        }
        if edges.len() < m {
            return Err(ParseError::MissingEdges {
                expected: m,
                found: edges.len(),
            });
        }
        Ok(Self::with_weights(n, root, edges).expect("validated during parse"))
    }

    /// Canonical text serialization; `parse` of the result is the identity.
    pub fn to_text(&self) -> String {
        let mut out = format!("digraph {} {} {}\n", self.n, self.edge_count(), self.root);
        for (id, &(t, h)) in self.edges.iter().enumerate() {
            let w = self.weights[id];
            if w == Weight::ONE {
                out.push_str(&format!("{t} {h}\n"));
            } else {
                out.push_str(&format!("{t} {h} {w}\n"));
            }
        }
        out
    }

    /// JSON export: `{"n":..,"root":..,"edges":[[tail,head,"weight"],..]}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct GraphJson {
            n: usize,
            root: usize,
            edges: Vec<(usize, usize, String)>,
        }
        let edges = self
            .edges
            .iter()
            .zip(&self.weights)
            .map(|(&(t, h), w)| (t, h, w.to_string()))
            .collect();
        serde_json::to_string(&GraphJson {
            n: self.n,
            root: self.root,
            edges,
        })
        .expect("graph serializes")
    }
}

/// Read-only access to a rooted digraph or a restricted view of one.
///
/// Edge ids always refer to the host graph, so results from a view compose
/// directly with host-level sets.
pub trait Digraph {
    fn host(&self) -> &RootedDigraph;
    fn has_edge(&self, e: usize) -> bool;

    fn vertex_count(&self) -> usize {
        self.host().vertex_count()
    }

    fn root(&self) -> usize {
        self.host().root()
    }

    /// Size of the host edge-id space (not the number of present edges).
    fn edge_slots(&self) -> usize {
        self.host().edge_count()
    }

    fn endpoints(&self, e: usize) -> (usize, usize) {
        self.host().endpoints(e)
    }

    fn in_edges(&self, v: usize) -> FilteredEdges<'_, Self>
    where
        Self: Sized,
    {
        FilteredEdges {
            ids: self.host().in_edge_ids(v).iter(),
            graph: self,
        }
    }

    fn out_edges(&self, v: usize) -> FilteredEdges<'_, Self>
    where
        Self: Sized,
    {
        FilteredEdges {
            ids: self.host().out_edge_ids(v).iter(),
            graph: self,
        }
    }

    fn in_degree(&self, v: usize) -> usize
    where
        Self: Sized,
    {
        self.in_edges(v).count()
    }

    /// Ids of present edges, ascending.
    fn edge_set(&self) -> EdgeSet
    where
        Self: Sized,
    {
        (0..self.edge_slots()).filter(|&e| self.has_edge(e)).collect()
    }

    fn to_view(&self) -> SubgraphView<'_>;
}

impl Digraph for RootedDigraph {
    fn host(&self) -> &RootedDigraph {
        self
    }

    fn has_edge(&self, e: usize) -> bool {
        e < self.edge_count()
    }

    fn to_view(&self) -> SubgraphView<'_> {
        SubgraphView::full(self)
    }
}

/// Ascending edge ids of an adjacency list filtered to present edges.
pub struct FilteredEdges<'a, G: ?Sized> {
    ids: std::slice::Iter<'a, usize>,
    graph: &'a G,
}

impl<G: Digraph> Iterator for FilteredEdges<'_, G> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        self.ids.find(|&&e| self.graph.has_edge(e)).copied()
    }
}

/// Restriction of a host graph to a subset of its edges. Vertices are kept;
/// queries answer as if absent edges were deleted.
#[derive(Debug, Clone)]
pub struct SubgraphView<'a> {
    host: &'a RootedDigraph,
    present: Vec<bool>,
}

impl<'a> SubgraphView<'a> {
    pub fn full(host: &'a RootedDigraph) -> Self {
        SubgraphView {
            host,
            present: vec![true; host.edge_count()],
        }
    }

    pub fn empty(host: &'a RootedDigraph) -> Self {
        SubgraphView {
            host,
            present: vec![false; host.edge_count()],
        }
    }

    /// View containing exactly the edges of `f`. Ids are assumed valid.
    pub fn from_set(host: &'a RootedDigraph, f: &EdgeSet) -> Self {
        let mut view = Self::empty(host);
        for &e in f {
            view.present[e] = true;
        }
        view
    }

    pub fn insert_edge(&mut self, e: usize) {
        self.present[e] = true;
    }

    pub fn remove_edge(&mut self, e: usize) {
        self.present[e] = false;
    }
}

impl Digraph for SubgraphView<'_> {
    fn host(&self) -> &RootedDigraph {
        self.host
    }

    fn has_edge(&self, e: usize) -> bool {
        e < self.present.len() && self.present[e]
    }

    fn to_view(&self) -> SubgraphView<'_> {
        self.clone()
    }
}

/// Validating constructor for a view; rejects out-of-range edge ids.
pub fn subgraph_view<'a>(
    host: &'a RootedDigraph,
    f: &EdgeSet,
) -> Result<SubgraphView<'a>, Error> {
    for &e in f {
        if e >= host.edge_count() {
            return Err(Error::EdgeOutOfRange(e));
        }
    }
    Ok(SubgraphView::from_set(host, f))
}

/// Ids of edges entering the vertex set `xs` (tail outside, head inside),
/// ascending.
pub fn entering_edge_ids<G: Digraph>(g: &G, xs: &VertexSet) -> Vec<usize> {
    (0..g.edge_slots())
        .filter(|&e| g.has_edge(e))
        .filter(|&e| {
            let (t, h) = g.endpoints(e);
            xs.contains(&h) && !xs.contains(&t)
        })
        .collect()
}

/// In-degree of a vertex set: the number of edges entering it.
pub fn rho<G: Digraph>(g: &G, xs: &VertexSet) -> usize {
    entering_edge_ids(g, xs).len()
}

/// True iff the graph has no directed cycle, by repeated sink removal.
pub fn is_acyclic<G: Digraph>(g: &G) -> bool {
    let n = g.vertex_count();
    let mut out_deg: Vec<usize> = (0..n).map(|v| g.out_edges(v).count()).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| out_deg[v] == 0).collect();
    let mut removed = vec![false; n];
    let mut count = 0;
    while let Some(v) = stack.pop() {
        removed[v] = true;
        count += 1;
        for e in g.in_edges(v) {
            let (t, _) = g.endpoints(e);
            if !removed[t] {
                out_deg[t] -= 1;
                if out_deg[t] == 0 {
                    stack.push(t);
                }
            }
        }
    }
    count == n
}
