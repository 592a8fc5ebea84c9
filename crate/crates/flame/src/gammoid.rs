//! Per-vertex gammoids and the minimum-weight maximal flame for acyclic
//! digraphs.
//!
//! For a vertex `v`, the ground set is `in(v)` and a subset `X` is
//! independent when there are `|X|` edge-disjoint root→`v` paths whose last
//! edges are exactly `X`; the rank is `λ(r, v)`. A minimum-weight base is
//! found by matroid greedy: edges of `in(v)` are tried in increasing
//! weight, and `X + e` is tested by searching one augmenting path while a
//! 0/1 flow with saturated in-edges exactly `X` is maintained across
//! steps. In an acyclic digraph the union of per-vertex minimum bases is a
//! minimum-weight maximal flame; on cyclic inputs the union can fail to be
//! a flame, so those are rejected.

use crate::connectivity::{lambda_all, max_disjoint_paths};
use crate::error::Error;
use crate::flame::flame_report;
use crate::graph::{is_acyclic, EdgeSet, RootedDigraph, SubgraphView};
use crate::invariants;
use crate::weight::Weight;

/// True iff `x ⊆ in(v)` is independent in the gammoid of `v`: deleting the
/// other in-edges of `v` leaves connectivity `|x|`.
pub fn gammoid_independent(d: &RootedDigraph, v: usize, x: &EdgeSet) -> Result<bool, Error> {
    assert!(v < d.vertex_count() && v != d.root());
    for &e in x {
        if e >= d.edge_count() {
            return Err(Error::EdgeOutOfRange(e));
        }
        if d.endpoints(e).1 != v {
            return Err(Error::NotInEdgeSubset { vertex: v, edge: e });
        }
    }
    let mut view = SubgraphView::full(d);
    for &e in d.in_edge_ids(v) {
        if !x.contains(&e) {
            view.remove_edge(e);
        }
    }
    Ok(max_disjoint_paths(&view, v).value == x.len())
}

/// Reusable scratch for the greedy, holding the graph as flat
/// compressed-adjacency arrays so the repeated searches stay cache-local.
/// BFS state is epoch-stamped, so each search is O(edges) with no
/// re-initialization.
struct GreedyState {
    root: u32,
    tails: Vec<u32>,
    heads: Vec<u32>,
    out_off: Vec<u32>,
    out_ids: Vec<u32>,
    in_off: Vec<u32>,
    in_ids: Vec<u32>,
    flow: Vec<bool>,
    selected: Vec<bool>,
    visited: Vec<u32>,
    parent: Vec<(u32, bool)>,
    queue: Vec<u32>,
    epoch: u32,
}

impl GreedyState {
    fn new(d: &RootedDigraph) -> Self {
        let n = d.vertex_count();
        let m = d.edge_count();
        assert!(n <= u32::MAX as usize && m < u32::MAX as usize);
        let mut tails = Vec::with_capacity(m);
        let mut heads = Vec::with_capacity(m);
        for e in 0..m {
            let (t, h) = d.endpoints(e);
            tails.push(t as u32);
            heads.push(h as u32);
        }
        let mut out_off = Vec::with_capacity(n + 1);
        let mut out_ids = Vec::with_capacity(m);
        let mut in_off = Vec::with_capacity(n + 1);
        let mut in_ids = Vec::with_capacity(m);
        out_off.push(0);
        in_off.push(0);
        for v in 0..n {
            out_ids.extend(d.out_edge_ids(v).iter().map(|&e| e as u32));
            out_off.push(out_ids.len() as u32);
            in_ids.extend(d.in_edge_ids(v).iter().map(|&e| e as u32));
            in_off.push(in_ids.len() as u32);
        }
        GreedyState {
            root: d.root() as u32,
            tails,
            heads,
            out_off,
            out_ids,
            in_off,
            in_ids,
            flow: vec![false; m],
            selected: vec![false; m],
            visited: vec![0; n],
            parent: vec![(0, false); n],
            queue: Vec::with_capacity(n),
            epoch: 0,
        }
    }

    /// BFS in the residual graph of the current flow, restricted to the
    /// graph where the in-edges of `v` outside `X + candidate` are deleted.
    /// Candidates at each vertex are taken in ascending edge-id order.
    /// On success flips the flow along the path found and returns true.
    fn augment(&mut self, v: u32, candidate: u32) -> bool {
        if self.epoch == u32::MAX {
            self.visited.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.queue.clear();
        self.queue.push(self.root);
        self.visited[self.root as usize] = self.epoch;
        let mut head = 0;
        'bfs: while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            let outs = &self.out_ids[self.out_off[u] as usize..self.out_off[u + 1] as usize];
            let ins = &self.in_ids[self.in_off[u] as usize..self.in_off[u + 1] as usize];
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
                    if self.flow[e as usize] {
                        continue;
                    }
                    let h = self.heads[e as usize];
                    if h == v && !self.selected[e as usize] && e != candidate {
                        continue;
                    }
                    (e, h, false)
                } else {
                    let e = ins[j];
                    j += 1;
                    if !self.flow[e as usize] {
                        continue;
                    }
                    (e, self.tails[e as usize], true)
                };
                if self.visited[reached as usize] != self.epoch {
                    self.visited[reached as usize] = self.epoch;
                    self.parent[reached as usize] = (e, backward);
                    if reached == v {
                        break 'bfs;
                    }
                    self.queue.push(reached);
                }
            }
        }
        if self.visited[v as usize] != self.epoch {
            return false;
        }
        let mut cur = v;
        while cur != self.root {
            let (e, backward) = self.parent[cur as usize];
            self.flow[e as usize] = !backward;
            cur = if backward {
                self.heads[e as usize]
            } else {
                self.tails[e as usize]
            };
        }
        true
    }

    fn in_edges(&self, v: usize) -> &[u32] {
        &self.in_ids[self.in_off[v] as usize..self.in_off[v + 1] as usize]
    }

    /// Minimum-weight base of the gammoid of `v` by greedy over
    /// `(weight, id)`-sorted in-edges.
    fn min_base(&mut self, v: usize, weights: &[Weight]) -> EdgeSet {
        let mut order: Vec<u32> = self.in_edges(v).to_vec();
        order.sort_by_key(|&e| (weights[e as usize], e));
        self.flow.fill(false);
        let mut base = EdgeSet::new();
        for &e in &order {
            if self.augment(v as u32, e) {
                self.selected[e as usize] = true;
                base.insert(e as usize);
            }
        }
        for i in self.in_off[v]..self.in_off[v + 1] {
            self.selected[self.in_ids[i as usize] as usize] = false;
        }
        base
    }
}

/// Minimum-weight base of the gammoid of `v` under the given per-edge
/// weights. The size of the result is `λ(r, v)`.
pub fn gammoid_min_base(d: &RootedDigraph, v: usize, weights: &[Weight]) -> EdgeSet {
    assert!(v < d.vertex_count() && v != d.root());
    assert_eq!(weights.len(), d.edge_count());
    let base = GreedyState::new(d).min_base(v, weights);
    if invariants::enabled() {
        assert!(
            gammoid_independent(d, v, &base).expect("base is a valid in-edge subset"),
            "greedy result must be independent"
        );
        assert_eq!(base.len(), max_disjoint_paths(d, v).value, "greedy result must span");
    }
    base
}

/// Minimum-weight maximal flame of an acyclic digraph and its exact total
/// weight: the disjoint union of per-vertex minimum bases.
pub fn min_weight_maximal_flame_dag(
    d: &RootedDigraph,
    weights: &[Weight],
) -> Result<(EdgeSet, Weight), Error> {
    assert_eq!(weights.len(), d.edge_count());
    if !is_acyclic(d) {
        return Err(Error::CyclicInput);
    }
    let mut state = GreedyState::new(d);
    let mut flame = EdgeSet::new();
    for v in d.non_root_vertices() {
        flame.extend(state.min_base(v, weights));
    }
    let total = Weight::sum(flame.iter().map(|&e| weights[e]));
    if invariants::enabled() {
        assert!(
            flame_report(d, &flame).expect("bases avoid the root").is_flame(),
            "union of bases must be a flame in a dag"
        );
        let sum: usize = lambda_all(d).values().sum();
        assert_eq!(flame.len(), sum);
    }
    Ok((flame, total))
}
