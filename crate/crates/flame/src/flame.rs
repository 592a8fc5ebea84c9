//! Flame recognition and maximal-flame construction.
//!
//! An edge set `F` is a flame when every non-root vertex's in-degree in
//! `F` equals its connectivity from the root in `F`. Maximal flames
//! preserve every `λ(r, v)` of the host graph and have exactly `Σ λ(r, v)`
//! edges. Two constructions are provided: *peel* deletes redundant edges
//! from the full graph (each deletion preserves all connectivities),
//! *grow* adds one edge at a time into the maximal tight set of a
//! deficient vertex (each addition keeps the set a flame). Neither output
//! contains an edge entering the root.

use crate::connectivity::{lambda_all, max_disjoint_paths, tight_sets};
use crate::error::Error;
use crate::graph::{Digraph, EdgeSet, RootedDigraph, SubgraphView};
use crate::invariants;

/// One vertex whose in-degree exceeds its in-subgraph connectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlameViolation {
    pub vertex: usize,
    pub in_degree: usize,
    pub lambda: usize,
}

/// Per-vertex comparison of in-degree against connectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlameReport {
    pub violations: Vec<FlameViolation>,
}

impl FlameReport {
    pub fn is_flame(&self) -> bool {
        self.violations.is_empty()
    }
}

fn validate_subset(d: &RootedDigraph, f: &EdgeSet) -> Result<(), Error> {
    for &e in f {
        if e >= d.edge_count() {
            return Err(Error::EdgeOutOfRange(e));
        }
        if d.enters_root(e) {
            return Err(Error::EdgeEntersRoot { edge: e });
        }
    }
    Ok(())
}

/// Checks whether `f` is a flame in `d`. Rejects edge sets containing an
/// edge into the root.
pub fn flame_report(d: &RootedDigraph, f: &EdgeSet) -> Result<FlameReport, Error> {
    validate_subset(d, f)?;
    let view = SubgraphView::from_set(d, f);
    let mut violations = Vec::new();
    for v in d.non_root_vertices() {
        let in_degree = view.in_degree(v);
        let lambda = max_disjoint_paths(&view, v).value;
        debug_assert!(lambda <= in_degree);
        if in_degree != lambda {
            violations.push(FlameViolation {
                vertex: v,
                in_degree,
                lambda,
            });
        }
    }
    Ok(FlameReport { violations })
}

fn not_a_flame(report: &FlameReport) -> Error {
    let v = report.violations[0];
    Error::NotAFlame {
        vertex: v.vertex,
        in_degree: v.in_degree,
        lambda: v.lambda,
    }
}

/// Maximal flame by deletion: start from all edges not entering the root;
/// while some vertex has more in-edges than its target connectivity,
/// delete the lowest-id in-edge whose tail lies in the vertex's minimal
/// tight set. Every deletion preserves all `λ(r, v)`.
pub fn peel_maximal_flame(d: &RootedDigraph) -> EdgeSet {
    let targets = lambda_all(d);
    let mut view = SubgraphView::full(d);
    for e in 0..d.edge_count() {
        if d.enters_root(e) {
            view.remove_edge(e);
        }
    }
    loop {
        let Some(v) = d
            .non_root_vertices()
            .find(|&v| view.in_degree(v) > targets[&v])
        else {
            break;
        };
        let t_min = tight_sets(&view, v).t_min;
        let e = view
            .in_edges(v)
            .find(|&e| t_min.contains(&view.endpoints(e).0))
            .expect("an excess in-edge from inside the minimal tight set exists");
        view.remove_edge(e);
        if invariants::enabled() {
            assert_eq!(lambda_all(&view), targets, "deletion must preserve connectivity");
        }
    }
    view.edge_set()
}

/// One greedoid augmentation step: for the lowest vertex whose
/// connectivity in `f` is below its connectivity in `d`, the lowest-id
/// edge outside `f` entering the vertex's maximal tight set. Returns
/// `None` when `f` is already a maximal flame. `f` must be a flame.
pub fn augment_flame(d: &RootedDigraph, f: &EdgeSet) -> Result<Option<usize>, Error> {
    let report = flame_report(d, f)?;
    if !report.is_flame() {
        return Err(not_a_flame(&report));
    }
    let targets = lambda_all(d);
    let view = SubgraphView::from_set(d, f);
    for v in d.non_root_vertices() {
        if max_disjoint_paths(&view, v).value >= targets[&v] {
            continue;
        }
        let m_max = tight_sets(&view, v).m_max;
        let e = (0..d.edge_count())
            .find(|&e| {
                if f.contains(&e) {
                    return false;
                }
                let (t, h) = d.endpoints(e);
                m_max.contains(&h) && !m_max.contains(&t)
            })
            .expect("a deficient vertex's maximal tight set is entered by a spare edge");
        if invariants::enabled() {
            let mut next = f.clone();
            next.insert(e);
            assert!(
                flame_report(d, &next).expect("validated").is_flame(),
                "augmentation must preserve the flame property"
            );
        }
        return Ok(Some(e));
    }
    Ok(None)
}

/// Maximal flame by repeated augmentation from the empty set. The
/// intermediate sets form a strictly growing chain of flames.
pub fn grow_maximal_flame(d: &RootedDigraph) -> EdgeSet {
    let mut f = EdgeSet::new();
    while let Some(e) = augment_flame(d, &f).expect("grown sets stay flames") {
        f.insert(e);
    }
    f
}
