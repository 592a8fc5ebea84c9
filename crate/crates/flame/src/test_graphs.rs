//! Small fixture graphs shared by the unit tests.

use crate::graph::RootedDigraph;
use crate::weight::Weight;

/// e0: 0→1, e1: 0→2, e2: 1→2. The unique maximal flame is the whole graph.
pub fn triangle() -> RootedDigraph {
    RootedDigraph::new(3, 0, [(0, 1), (0, 2), (1, 2)]).unwrap()
}

/// e0: 0→1, e1: 1→2, e2: 0→2, e3: 1→2. Vertex 2 has three in-edges but
/// connectivity 2 (the cut {1,2} has in-degree 2).
pub fn parallel_paths() -> RootedDigraph {
    RootedDigraph::new(3, 0, [(0, 1), (1, 2), (0, 2), (1, 2)]).unwrap()
}

/// e0: 0→1, e1: 1→2, e2: 1→3, e3: 2→3, e4: 3→2. Cyclic; {e0,e3,e4} is a
/// base of the gammoid sum but not a flame.
pub fn fork_two_cycle() -> RootedDigraph {
    RootedDigraph::new(4, 0, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 2)]).unwrap()
}

/// e0: 0→1, e1: 0→2, e2: 1→2, e3: 2→1. Rooted 2-edge-connected.
pub fn two_cycle() -> RootedDigraph {
    RootedDigraph::new(3, 0, [(0, 1), (0, 2), (1, 2), (2, 1)]).unwrap()
}

/// One edge 0→1.
pub fn single_edge() -> RootedDigraph {
    RootedDigraph::new(2, 0, [(0, 1)]).unwrap()
}

pub fn edgeless(n: usize) -> RootedDigraph {
    RootedDigraph::new(n, 0, []).unwrap()
}

/// DAG with a dependent pair among the in-edges of its sink:
/// e0: 0→1 w1, e1: 0→2 w10, e2: 1→2 w1, e3: 1→2 w3. The two parallel 1→2
/// edges cannot both be used, so the cheap pair {e2,e3} is not independent
/// and the minimum-weight maximal flame is {e0,e1,e2} of weight 12.
pub fn weighted_parallel_sink() -> RootedDigraph {
    RootedDigraph::with_weights(
        3,
        0,
        [
            (0, 1, Weight::from_units(1)),
            (0, 2, Weight::from_units(10)),
            (1, 2, Weight::from_units(1)),
            (1, 2, Weight::from_units(3)),
        ],
    )
    .unwrap()
}

/// Flame admitting a branching family with correct head-sets whose
/// two-level prefix is not a flame: e0: 1→3, e1: 0→1, e2: 0→1, e3: 1→3,
/// e4: 0→3, e5: 2→1, e6: 3→2. Assigning B1 = {e0,e1,e6}, B2 = {e3,e5},
/// B3 = {e2,e4} gives branchings with head-sets V1, V2, V3, yet in
/// B1 ∪ B2 only one edge leaves the root while vertex 1 is entered twice.
pub fn bad_family_flame() -> RootedDigraph {
    RootedDigraph::new(
        4,
        0,
        [(1, 3), (0, 1), (0, 1), (1, 3), (0, 3), (2, 1), (3, 2)],
    )
    .unwrap()
}

/// DAG whose sink gammoid has three bases: e0: 0→1 w1, e1: 0→1 w1,
/// e2: 1→3 w1, e3: 1→2 w1, e4: 2→3 w2, e5: 1→3 w4. All three 2-subsets of
/// {e2,e4,e5} are independent (two disjoint paths through the parallel 0→1
/// edges), so there are exactly three maximal flames, of weights 6, 8, 9.
pub fn three_base_funnel() -> RootedDigraph {
    RootedDigraph::with_weights(
        4,
        0,
        [
            (0, 1, Weight::from_units(1)),
            (0, 1, Weight::from_units(1)),
            (1, 3, Weight::from_units(1)),
            (1, 2, Weight::from_units(1)),
            (2, 3, Weight::from_units(2)),
            (1, 3, Weight::from_units(4)),
        ],
    )
    .unwrap()
}
