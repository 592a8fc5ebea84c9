//! Decomposition of flames into chains of edge-disjoint branchings.
//!
//! A branching is an edge set that is an undirected forest with in-degree
//! at most one everywhere; entered vertices are its heads, un-entered
//! vertices that leave are its roots. For a flame with levels
//! `V_i = {v : ϱ(v) ≥ i}` the edge set splits into branchings
//! `B_1, …, B_m` where `B_i` has head-set exactly `V_i` and every prefix
//! union `B_1 ∪ … ∪ B_i` is again a flame. The top-level branching is
//! extracted greedily: grow `B` while the remaining graph keeps
//! connectivity `m` where possible (case 1) and otherwise route through
//! the smallest minimal tight set at level `m − 1` (case 2); both cases
//! preserve the connectivity requirements, so the loop never gets stuck.
//!
//! Contracting, for each level `i`, the root together with all vertices of
//! connectivity below `i` turns `B_i` into a spanning tree of the
//! contracted undirected graph; `verify_spanning_chain` checks that.

use std::collections::BTreeMap;

use thiserror::Error as ThisError;

use crate::connectivity::{lambda_all, max_disjoint_paths, tight_sets};
use crate::error::Error;
use crate::flame::{flame_report, grow_maximal_flame, peel_maximal_flame};
use crate::graph::{Digraph, EdgeSet, RootedDigraph, SubgraphView, VertexSet};
use crate::invariants;
use crate::union_find::UnionFind;

/// A validated branching with its derived head-set and root-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branching {
    pub edges: EdgeSet,
    /// Vertices entered by exactly one edge.
    pub heads: VertexSet,
    /// Vertices not entered but left by at least one edge; isolated
    /// vertices are neither heads nor roots.
    pub roots: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ThisError)]
pub enum BranchingViolation {
    #[error("vertex {vertex} is entered by edges {first_edge} and {second_edge}")]
    VertexEnteredTwice {
        vertex: usize,
        first_edge: usize,
        second_edge: usize,
    },
    #[error("edge {edge} closes an undirected cycle")]
    UndirectedCycle { edge: usize },
}

/// Checks the two branching invariants (in-degree at most one, no
/// undirected cycle), scanning edges in ascending id order and reporting
/// the first violation.
pub fn validate_branching<G: Digraph>(
    g: &G,
    b: &EdgeSet,
) -> Result<Branching, BranchingViolation> {
    let n = g.vertex_count();
    let mut entered: Vec<Option<usize>> = vec![None; n];
    let mut leaves = vec![false; n];
    let mut uf = UnionFind::new(n);
    for &e in b {
        assert!(g.has_edge(e), "edge set must be valid for the graph");
        let (t, h) = g.endpoints(e);
        if let Some(first) = entered[h] {
            return Err(BranchingViolation::VertexEnteredTwice {
                vertex: h,
                first_edge: first,
                second_edge: e,
            });
        }
        entered[h] = Some(e);
        if !uf.union(t, h) {
            return Err(BranchingViolation::UndirectedCycle { edge: e });
        }
        leaves[t] = true;
    }
    let heads: VertexSet = (0..n).filter(|&v| entered[v].is_some()).collect();
    let roots: VertexSet = (0..n)
        .filter(|&v| leaves[v] && entered[v].is_none())
        .collect();
    Ok(Branching {
        edges: b.clone(),
        heads,
        roots,
    })
}

/// Extracts a branching whose head-set is exactly the top connectivity
/// level `V_m = {v : λ(r, v) = m}`, such that removing it keeps
/// `λ(r, v)` intact outside `V_m` and at least `m − 1` inside. Requires a
/// vertex with positive connectivity.
pub fn good_branching<G: Digraph>(g: &G) -> Branching {
    let targets = lambda_all(g);
    let m = targets.values().copied().max().unwrap_or(0);
    assert!(m >= 1, "good branching needs a vertex with positive connectivity");
    let v_top: VertexSet = targets
        .iter()
        .filter(|&(_, &l)| l == m)
        .map(|(&v, _)| v)
        .collect();
    let mut remaining = g.to_view();
    let mut picked = EdgeSet::new();
    let mut unentered = v_top.clone();
    while !unentered.is_empty() {
        let lambda_now: BTreeMap<usize, usize> = unentered
            .iter()
            .map(|&v| (v, max_disjoint_paths(&remaining, v).value))
            .collect();
        let edge = if lambda_now.values().all(|&l| l == m) {
            // Case 1: connectivity is still full everywhere, so any
            // remaining edge entering the unentered set is safe.
            (0..g.edge_slots())
                .filter(|&e| remaining.has_edge(e))
                .find(|&e| {
                    let (t, h) = g.endpoints(e);
                    unentered.contains(&h) && !unentered.contains(&t)
                })
                .expect("a fully connected unentered set is entered by a remaining edge")
        } else {
            // Case 2: some vertex dropped to m − 1. Take the smallest
            // minimal tight set among those and add an edge that runs
            // inside it into an unentered vertex; such an edge preserves
            // all connectivities.
            debug_assert!(lambda_now.values().all(|&l| l == m || l == m - 1));
            let mut best: Option<(usize, VertexSet)> = None;
            for (&v, &l) in &lambda_now {
                if l + 1 == m {
                    let t = tight_sets(&remaining, v).t_min;
                    let better = match &best {
                        None => true,
                        Some((bv, bt)) => (t.len(), v) < (bt.len(), *bv),
                    };
                    if better {
                        best = Some((v, t));
                    }
                }
            }
            let (_, tight) = best.expect("case 2 has a vertex at level m - 1");
            (0..g.edge_slots())
                .filter(|&e| remaining.has_edge(e))
                .find(|&e| {
                    let (t, h) = g.endpoints(e);
                    tight.contains(&h)
                        && unentered.contains(&h)
                        && tight.contains(&t)
                        && !unentered.contains(&t)
                })
                .expect("the minimal tight set spills into its unentered part")
        };
        picked.insert(edge);
        remaining.remove_edge(edge);
        unentered.remove(&g.endpoints(edge).1);
        if invariants::enabled() {
            let b = validate_branching(g, &picked).expect("partial pick stays a branching");
            assert!(b.heads.is_subset(&v_top));
            assert!(b.roots.is_disjoint(&v_top));
            for (&v, &target) in &targets {
                let now = max_disjoint_paths(&remaining, v).value;
                if v_top.contains(&v) {
                    assert!(now + 1 >= m, "top level may drop by at most one");
                } else {
                    assert_eq!(now, target, "lower levels keep their connectivity");
                }
            }
        }
    }
    let branching = validate_branching(g, &picked).expect("construction preserves invariants");
    debug_assert_eq!(branching.heads, v_top);
    branching
}

/// Ordered branchings `B_1, …, B_m` partitioning a flame, with the level
/// sets `V_1 ⊇ … ⊇ V_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlameDecomposition {
    /// `branchings[i]` is `B_{i+1}`.
    pub branchings: Vec<Branching>,
    /// `levels[i]` is `V_{i+1} = {v : ϱ_F(v) ≥ i+1}`.
    pub levels: Vec<VertexSet>,
}

impl FlameDecomposition {
    pub fn depth(&self) -> usize {
        self.branchings.len()
    }

    /// Union of `B_1 ..= B_i`.
    pub fn prefix(&self, i: usize) -> EdgeSet {
        self.branchings[..i]
            .iter()
            .flat_map(|b| b.edges.iter().copied())
            .collect()
    }
}

/// Splits the flame `f` into branchings by repeatedly extracting the top
/// level. `f` must be a flame without edges into the root.
pub fn decompose_flame(d: &RootedDigraph, f: &EdgeSet) -> Result<FlameDecomposition, Error> {
    let report = flame_report(d, f)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::NotAFlame {
            vertex: v.vertex,
            in_degree: v.in_degree,
            lambda: v.lambda,
        });
    }
    let full_view = SubgraphView::from_set(d, f);
    let depth = d
        .non_root_vertices()
        .map(|v| full_view.in_degree(v))
        .max()
        .unwrap_or(0);
    let levels: Vec<VertexSet> = (1..=depth)
        .map(|i| {
            d.non_root_vertices()
                .filter(|&v| full_view.in_degree(v) >= i)
                .collect()
        })
        .collect();

    let mut remaining = f.clone();
    let mut reversed = Vec::with_capacity(depth);
    for level in (1..=depth).rev() {
        let view = SubgraphView::from_set(d, &remaining);
        let branching = good_branching(&view);
        remaining = remaining.difference(&branching.edges).copied().collect();
        if invariants::enabled() {
            assert!(
                flame_report(d, &remaining).expect("still valid").is_flame(),
                "peeling one level must leave a flame"
            );
            let rview = SubgraphView::from_set(d, &remaining);
            let max_deg = d.non_root_vertices().map(|v| rview.in_degree(v)).max();
            assert_eq!(max_deg.unwrap_or(0), level - 1);
        }
        reversed.push(branching);
    }
    reversed.reverse();
    let dec = FlameDecomposition {
        branchings: reversed,
        levels,
    };
    if invariants::enabled() {
        let total: usize = dec.branchings.iter().map(|b| b.edges.len()).sum();
        assert_eq!(total, f.len(), "branchings partition the flame");
        for i in 0..dec.depth() {
            assert_eq!(dec.branchings[i].heads, dec.levels[i]);
            assert!(
                flame_report(d, &dec.prefix(i + 1)).expect("valid").is_flame(),
                "every prefix union is a flame"
            );
        }
    }
    Ok(dec)
}

/// Which maximal-flame construction feeds the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FlameMethod {
    #[default]
    Peel,
    Grow,
}

/// Maximal flame plus its decomposition. For every level `i` the prefix
/// digraph `(V + r, B_1 ∪ … ∪ B_i)` has in-degrees and connectivities
/// `min(λ(r, v), i)` at every vertex.
pub fn decompose_digraph(
    d: &RootedDigraph,
    method: FlameMethod,
) -> Result<(EdgeSet, FlameDecomposition), Error> {
    let f = match method {
        FlameMethod::Peel => peel_maximal_flame(d),
        FlameMethod::Grow => grow_maximal_flame(d),
    };
    let dec = decompose_flame(d, &f)?;
    if invariants::enabled() {
        let targets = lambda_all(d);
        for i in 1..=dec.depth() {
            let prefix = dec.prefix(i);
            let view = SubgraphView::from_set(d, &prefix);
            for (&v, &target) in &targets {
                let expect = target.min(i);
                assert_eq!(view.in_degree(v), expect);
                assert_eq!(max_disjoint_paths(&view, v).value, expect);
            }
        }
    }
    Ok((f, dec))
}

/// Undirected multigraph obtained by forgetting directions and contracting
/// the root with every vertex of connectivity below `level` into node 0.
/// Self-loops produced by the contraction are discarded; parallel edges
/// stay. Each edge keeps its source id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedGraph {
    pub node_count: usize,
    /// Original vertex → contracted node (0 is the contracted blob).
    pub node_of_vertex: Vec<usize>,
    /// `(node, node, source edge id)` per surviving edge.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn contracted_graph(d: &RootedDigraph, level: usize) -> Result<ContractedGraph, Error> {
    let targets = lambda_all(d);
    let max = targets.values().copied().max().unwrap_or(0);
    if level < 1 || level > max {
        return Err(Error::LevelOutOfRange { level, max });
    }
    let mut node_of_vertex = vec![0; d.vertex_count()];
    let mut node_count = 1;
    for v in d.non_root_vertices() {
        if targets[&v] >= level {
            node_of_vertex[v] = node_count;
            node_count += 1;
        }
    }
    let edges = (0..d.edge_count())
        .filter_map(|e| {
            let (t, h) = d.endpoints(e);
            let (a, b) = (node_of_vertex[t], node_of_vertex[h]);
            (a != b).then_some((a, b, e))
        })
        .collect();
    Ok(ContractedGraph {
        node_count,
        node_of_vertex,
        edges,
    })
}

/// True iff every `B_i` of the decomposition maps to a spanning tree of
/// the level-`i` contracted graph.
pub fn verify_spanning_chain(d: &RootedDigraph, dec: &FlameDecomposition) -> bool {
    for (i, branching) in dec.branchings.iter().enumerate() {
        let Ok(contracted) = contracted_graph(d, i + 1) else {
            return false;
        };
        let mut uf = UnionFind::new(contracted.node_count);
        let mut tree_edges = 0;
        for &e in &branching.edges {
            let (t, h) = d.endpoints(e);
            let (a, b) = (contracted.node_of_vertex[t], contracted.node_of_vertex[h]);
            if a == b || !uf.union(a, b) {
                return false;
            }
            tree_edges += 1;
        }
        // An acyclic edge set of size nodes − 1 spans.
        if tree_edges + 1 != contracted.node_count {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_digraph, GenParams, SplitMix64};
    use crate::test_graphs::*;

    #[test]
    fn branching_validation_examples() {
        let g = two_cycle();
        let b = validate_branching(&g, &EdgeSet::from([0, 2])).unwrap();
        assert_eq!(b.heads, VertexSet::from([1, 2]));
        assert_eq!(b.roots, VertexSet::from([0]));
        assert_eq!(
            validate_branching(&g, &EdgeSet::from([2, 3])),
            Err(BranchingViolation::UndirectedCycle { edge: 3 })
        );
        let empty = validate_branching(&g, &EdgeSet::new()).unwrap();
        assert!(empty.heads.is_empty() && empty.roots.is_empty());

        let p = parallel_paths();
        assert_eq!(
            validate_branching(&p, &EdgeSet::from([1, 3])),
            Err(BranchingViolation::VertexEnteredTwice {
                vertex: 2,
                first_edge: 1,
                second_edge: 3
            })
        );
    }

    #[test]
    fn good_branching_examples() {
        // Triangle: top level is {2}, case 1 picks the lowest edge into it.
        let b = good_branching(&triangle());
        assert_eq!(b.edges, EdgeSet::from([1]));
        assert_eq!(b.heads, VertexSet::from([2]));

        // Rooted 2-edge-connected pair: case 1 adds 0→1, then vertex 2
        // drops to connectivity 1 and case 2 routes 1→2 inside its minimal
        // tight set {1,2}.
        let b = good_branching(&two_cycle());
        assert_eq!(b.edges, EdgeSet::from([0, 2]));
        assert_eq!(b.heads, VertexSet::from([1, 2]));

        let b = good_branching(&single_edge());
        assert_eq!(b.edges, EdgeSet::from([0]));
    }

    #[test]
    fn decompose_flame_examples() {
        let g = two_cycle();
        let dec = decompose_flame(&g, &EdgeSet::from([0, 1, 2, 3])).unwrap();
        assert_eq!(dec.depth(), 2);
        assert_eq!(dec.branchings[1].edges, EdgeSet::from([0, 2]));
        assert_eq!(dec.branchings[0].edges, EdgeSet::from([1, 3]));
        assert!(
            flame_report(&g, &dec.prefix(1)).unwrap().is_flame(),
            "first prefix is a flame"
        );

        let t = triangle();
        let dec = decompose_flame(&t, &EdgeSet::from([0, 1, 2])).unwrap();
        assert_eq!(dec.branchings[1].edges, EdgeSet::from([1]));
        assert_eq!(dec.branchings[0].edges, EdgeSet::from([0, 2]));
        assert_eq!(dec.levels, vec![VertexSet::from([1, 2]), VertexSet::from([2])]);

        let s = single_edge();
        let dec = decompose_flame(&s, &EdgeSet::from([0])).unwrap();
        assert_eq!(dec.depth(), 1);
        assert_eq!(dec.branchings[0].edges, EdgeSet::from([0]));
    }

    #[test]
    fn decompose_flame_rejects_bad_input() {
        let g = fork_two_cycle();
        assert!(matches!(
            decompose_flame(&g, &EdgeSet::from([0, 3, 4])),
            Err(Error::NotAFlame { .. })
        ));
        let with_root_edge = RootedDigraph::new(2, 0, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            decompose_flame(&with_root_edge, &EdgeSet::from([0, 1])),
            Err(Error::EdgeEntersRoot { edge: 1 })
        );
    }

    #[test]
    fn empty_flame_decomposes_to_nothing() {
        let g = edgeless(3);
        let dec = decompose_flame(&g, &EdgeSet::new()).unwrap();
        assert_eq!(dec.depth(), 0);
        assert!(verify_spanning_chain(&g, &dec));
    }

    #[test]
    fn decompose_digraph_matches_level_formula() {
        let g = two_cycle();
        let (f, dec) = decompose_digraph(&g, FlameMethod::Peel).unwrap();
        assert_eq!(f, EdgeSet::from([0, 1, 2, 3]));
        // Both branchings are spanning arborescences rooted at 0.
        for b in &dec.branchings {
            assert_eq!(b.heads, VertexSet::from([1, 2]));
            assert_eq!(b.roots, VertexSet::from([0]));
        }
        let prefix = dec.prefix(1);
        let view = SubgraphView::from_set(&g, &prefix);
        for v in [1, 2] {
            assert_eq!(max_disjoint_paths(&view, v).value, 1);
        }
    }

    #[test]
    fn contraction_examples() {
        let t = triangle();
        let c2 = contracted_graph(&t, 2).unwrap();
        assert_eq!(c2.node_count, 2);
        assert_eq!(c2.node_of_vertex, vec![0, 0, 1]);
        assert_eq!(c2.edges, vec![(0, 1, 1), (0, 1, 2)]);

        let c1 = contracted_graph(&t, 1).unwrap();
        assert_eq!(c1.node_count, 3);
        assert_eq!(c1.edges.len(), 3);

        let c = contracted_graph(&two_cycle(), 2).unwrap();
        assert_eq!(c.node_count, 3);
        assert_eq!(c.edges.len(), 4);

        assert_eq!(
            contracted_graph(&t, 3),
            Err(Error::LevelOutOfRange { level: 3, max: 2 })
        );
    }

    #[test]
    fn spanning_chain_accepts_decompositions_and_rejects_label_swaps() {
        let t = triangle();
        let (_, dec) = decompose_digraph(&t, FlameMethod::Peel).unwrap();
        assert!(verify_spanning_chain(&t, &dec));

        let g = two_cycle();
        let (_, dec) = decompose_digraph(&g, FlameMethod::Peel).unwrap();
        assert!(verify_spanning_chain(&g, &dec));

        let (_, dec) = decompose_digraph(&t, FlameMethod::Peel).unwrap();
        let swapped = FlameDecomposition {
            branchings: vec![dec.branchings[1].clone(), dec.branchings[0].clone()],
            levels: dec.levels.clone(),
        };
        assert!(!verify_spanning_chain(&t, &swapped));
    }

    #[test]
    fn random_decompositions_hold_all_invariants() {
        let mut rng = SplitMix64::new(0xdec0);
        for _ in 0..30 {
            let n = 2 + (rng.next_u64() % 5) as usize;
            let m = 1 + (rng.next_u64() % 11) as usize;
            let g = random_digraph(&GenParams {
                n,
                m,
                seed: rng.next_u64(),
                acyclic: false,
                allow_parallel: true,
            })
            .unwrap();
            for method in [FlameMethod::Peel, FlameMethod::Grow] {
                let (f, dec) = decompose_digraph(&g, method).unwrap();
                let total: usize = dec.branchings.iter().map(|b| b.edges.len()).sum();
                assert_eq!(total, f.len());
                assert!(verify_spanning_chain(&g, &dec), "graph {}", g.to_text());
            }
        }
    }
}
