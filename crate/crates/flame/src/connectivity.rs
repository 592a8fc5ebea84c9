//! Local rooted edge-connectivity.
//!
//! `λ(r, v)` is computed as a maximum set of edge-disjoint paths from the
//! root to `v`, by unit-capacity augmentation with breadth-first residual
//! search. The final residual graph also yields the minimal and maximal
//! tight sets: a set `X ⊆ V` with `v ∈ X` is *v-tight* when its in-degree
//! equals `λ(r, v)`, and tight sets are closed under union and
//! intersection, so unique minimal and maximal ones exist.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{rho, Digraph, VertexSet};
use crate::invariants;

/// A 0/1 flow from the root to `target` witnessing `value = λ(r, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowState {
    pub target: usize,
    pub value: usize,
    /// Per-edge saturation, indexed by host edge id.
    pub flow: Vec<bool>,
}

impl FlowState {
    /// Ids of saturated edges, ascending.
    pub fn saturated_edge_ids(&self) -> Vec<usize> {
        (0..self.flow.len()).filter(|&e| self.flow[e]).collect()
    }
}

/// Minimal and maximal tight sets for one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightSets {
    pub vertex: usize,
    pub lambda: usize,
    /// The unique minimal tight set `T_v`.
    pub t_min: VertexSet,
    /// The unique maximal tight set `M_v`.
    pub m_max: VertexSet,
}

/// Breadth-first search over the residual graph from the root. Forward
/// moves use unsaturated present edges, backward moves reversed saturated
/// edges; at each vertex candidates are taken in ascending edge-id order.
/// Stops early once `stop_at` is reached.
fn residual_search<G: Digraph>(
    g: &G,
    flow: &[bool],
    stop_at: Option<usize>,
) -> (Vec<bool>, Vec<Option<(usize, bool)>>) {
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    let mut parent: Vec<Option<(usize, bool)>> = vec![None; n];
    let mut queue = VecDeque::new();
    visited[g.root()] = true;
    queue.push_back(g.root());
    'bfs: while let Some(u) = queue.pop_front() {
        let outs = g.host().out_edge_ids(u);
        let ins = g.host().in_edge_ids(u);
        let (mut i, mut j) = (0, 0);
        while i < outs.len() || j < ins.len() {
            let forward = match (outs.get(i), ins.get(j)) {
                (Some(&a), Some(&b)) => a < b,
                (Some(_), None) => true,
                (None, _) => false,
            };
            let (e, reached, backward) = if forward {
                let e = outs[i];
                i += 1;
                if !g.has_edge(e) || flow[e] {
                    continue;
                }
                (e, g.endpoints(e).1, false)
            } else {
                let e = ins[j];
                j += 1;
                if !g.has_edge(e) || !flow[e] {
                    continue;
                }
                (e, g.endpoints(e).0, true)
            };
            if !visited[reached] {
                visited[reached] = true;
                parent[reached] = Some((e, backward));
                if stop_at == Some(reached) {
                    break 'bfs;
                }
                queue.push_back(reached);
            }
        }
    }
    (visited, parent)
}

/// Vertices that can reach `v` in the residual graph (including `v`).
fn residual_reaches<G: Digraph>(g: &G, flow: &[bool], v: usize) -> Vec<bool> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[v] = true;
    queue.push_back(v);
    while let Some(y) = queue.pop_front() {
        // Predecessors over residual arcs: unsaturated in-edges traversed
        // forward, saturated out-edges traversed backward.
        for e in g.in_edges(y) {
            if !flow[e] {
                let (t, _) = g.endpoints(e);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        for e in g.out_edges(y) {
            if flow[e] {
                let (_, h) = g.endpoints(e);
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
    }
    seen
}

/// Maximum set of edge-disjoint root→`target` paths as a 0/1 flow.
/// Deterministic: augmenting paths are found by BFS in ascending edge-id
/// order. `target` must differ from the root.
pub fn max_disjoint_paths<G: Digraph>(g: &G, target: usize) -> FlowState {
    assert!(target < g.vertex_count(), "target out of range");
    assert_ne!(target, g.root(), "connectivity from the root to itself is undefined");
    let mut flow = vec![false; g.edge_slots()];
    let mut value = 0;
    loop {
        let (visited, parent) = residual_search(g, &flow, Some(target));
        if !visited[target] {
            break;
        }
        let mut cur = target;
        while cur != g.root() {
            let (e, backward) = parent[cur].expect("path reaches the root");
            flow[e] = !backward;
            cur = if backward {
                g.endpoints(e).1
            } else {
                g.endpoints(e).0
            };
        }
        value += 1;
    }
    if invariants::enabled() {
        assert_flow_consistent(g, target, value, &flow);
    }
    FlowState {
        target,
        value,
        flow,
    }
}

fn assert_flow_consistent<G: Digraph>(g: &G, target: usize, value: usize, flow: &[bool]) {
    let saturated_in = |v: usize| g.in_edges(v).filter(|&e| flow[e]).count();
    let saturated_out = |v: usize| g.out_edges(v).filter(|&e| flow[e]).count();
    for (e, &saturated) in flow.iter().enumerate() {
        assert!(!saturated || g.has_edge(e), "flow on an absent edge");
    }
    for v in 0..g.vertex_count() {
        if v == g.root() {
            // Augmenting paths never revisit the root, so nothing flows in.
            assert_eq!(saturated_in(v), 0);
            assert_eq!(saturated_out(v), value);
        } else if v == target {
            assert_eq!(saturated_in(v), value);
            assert_eq!(saturated_out(v), 0);
        } else {
            assert_eq!(saturated_in(v), saturated_out(v));
        }
    }
}

/// `λ(r, v)` for every non-root vertex.
pub fn lambda_all<G: Digraph>(g: &G) -> BTreeMap<usize, usize> {
    (0..g.vertex_count())
        .filter(|&v| v != g.root())
        .map(|v| (v, max_disjoint_paths(g, v).value))
        .collect()
}

/// Computes `λ(r, v)` together with the minimal tight set (vertices that
/// can still reach `v` in the final residual graph) and the maximal tight
/// set (complement of what the root still reaches).
pub fn tight_sets<G: Digraph>(g: &G, v: usize) -> TightSets {
    let state = max_disjoint_paths(g, v);
    let (root_reach, _) = residual_search(g, &state.flow, None);
    let to_v = residual_reaches(g, &state.flow, v);
    let t_min: VertexSet = (0..g.vertex_count())
        .filter(|&w| w != g.root() && to_v[w])
        .collect();
    let m_max: VertexSet = (0..g.vertex_count())
        .filter(|&w| w != g.root() && !root_reach[w])
        .collect();
    if invariants::enabled() {
        assert!(t_min.contains(&v));
        assert!(t_min.is_subset(&m_max), "minimal tight set inside maximal");
        assert_eq!(rho(g, &t_min), state.value);
        assert_eq!(rho(g, &m_max), state.value);
    }
    TightSets {
        vertex: v,
        lambda: state.value,
        t_min,
        m_max,
    }
}

/// True iff deleting edge `e = (u, v)` preserves every `λ(r, w)`;
/// equivalently, iff `u` lies in the minimal tight set of `v`.
pub fn edge_deletable<G: Digraph>(g: &G, e: usize) -> bool {
    assert!(g.has_edge(e), "edge absent from the graph");
    let (u, v) = g.endpoints(e);
    assert_ne!(v, g.root(), "deletability is defined for edges not entering the root");
    tight_sets(g, v).t_min.contains(&u)
}
