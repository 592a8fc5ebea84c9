//! Independent brute-force oracles and exhaustive structure checkers.
//!
//! Everything here validates the flow/greedy implementations from the
//! outside: connectivity by explicit cut enumeration, flames by subset
//! enumeration, the greedoid and matroid axioms exhaustively. The oracles
//! deliberately share no code with the paths they check; they work on edge
//! bitmasks over the host id space. Size guards are hard errors, never
//! silent truncation.

use std::collections::HashSet;
use std::fmt;

use crate::connectivity::TightSets;
use crate::error::Error;
use crate::graph::{Digraph, EdgeSet, RootedDigraph, VertexSet};
use crate::union_find::UnionFind;
use crate::weight::Weight;

/// splitmix64, the PRNG for all seeded test corpora. Constants follow the
/// reference implementation, so corpora reproduce across languages:
/// increment 0x9E3779B97F4A7C15, mix multipliers 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB, shifts 30/27/31.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound` by modulo reduction (documented bias,
    /// irrelevant at test scale and reproducible everywhere).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        self.next_u64() % bound
    }
}

/// Parameters for the seeded instance generator. Generation is a pure
/// function of the fields; the root is always vertex 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub acyclic: bool,
    pub allow_parallel: bool,
}

/// Seeded random multigraph. In acyclic mode edges are oriented along a
/// seeded random vertex permutation; duplicate edges are resampled when
/// parallels are disallowed.
pub fn random_digraph(p: &GenParams) -> Result<RootedDigraph, Error> {
    if p.n == 0 {
        return Err(Error::VertexOutOfRange(0));
    }
    let n = p.n;
    let max = if n <= 1 {
        0
    } else if p.allow_parallel {
        usize::MAX
    } else if p.acyclic {
        n * (n - 1) / 2
    } else {
        n * (n - 1)
    };
    if p.m > max {
        return Err(Error::InfeasibleEdgeCount { n, m: p.m, max });
    }
    let mut rng = SplitMix64::new(p.seed);
    let mut pos: Vec<usize> = (0..n).collect();
    if p.acyclic {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        for (idx, &v) in perm.iter().enumerate() {
            pos[v] = idx;
        }
    }
    let mut used = HashSet::new();
    let mut edges = Vec::with_capacity(p.m);
    while edges.len() < p.m {
        let a = rng.below(n as u64) as usize;
        let b = rng.below(n as u64) as usize;
        if a == b {
            continue;
        }
        let (t, h) = if p.acyclic && pos[a] > pos[b] {
            (b, a)
        } else {
            (a, b)
        };
        if !p.allow_parallel && !used.insert((t, h)) {
            continue;
        }
        edges.push((t, h));
    }
    Ok(RootedDigraph::new(n, 0, edges).expect("generator emits no self-loops"))
}

const BRUTE_VERTEX_LIMIT: usize = 20;
const BRUTE_EDGE_LIMIT: usize = 20;
const GREEDOID_EDGE_LIMIT: usize = 14;
const FAMILY_EDGE_LIMIT: usize = 16;
const FAMILY_ASSIGNMENT_LIMIT: u128 = 1_000_000;
const BASE_PRODUCT_LIMIT: usize = 1_000_000;
pub(crate) const GROUND_SET_LIMIT: usize = 10;

fn vertex_bits<G: Digraph>(g: &G) -> (Vec<usize>, Vec<Option<usize>>) {
    let verts: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != g.root()).collect();
    let mut bit = vec![None; g.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        bit[v] = Some(i);
    }
    (verts, bit)
}

/// `λ(r, v)` as the minimum in-degree over all vertex sets containing `v`,
/// by enumeration of all `2^(|V|-1)` candidate cuts.
pub fn lambda_bruteforce<G: Digraph>(g: &G, v: usize) -> Result<usize, Error> {
    assert!(v < g.vertex_count() && v != g.root());
    let (verts, bit) = vertex_bits(g);
    let k = verts.len();
    if k > BRUTE_VERTEX_LIMIT {
        return Err(Error::SizeGuard {
            what: "vertex count",
            actual: k,
            limit: BRUTE_VERTEX_LIMIT,
        });
    }
    let edges: Vec<(Option<usize>, usize)> = (0..g.edge_slots())
        .filter(|&e| g.has_edge(e))
        .filter_map(|e| {
            let (t, h) = g.endpoints(e);
            bit[h].map(|hb| (bit[t], hb))
        })
        .collect();
    let vb = bit[v].expect("non-root vertex has a bit");
    let mut best = usize::MAX;
    for x in 0u64..1 << k {
        if x >> vb & 1 == 0 {
            continue;
        }
        let cut = edges
            .iter()
            .filter(|&&(tb, hb)| x >> hb & 1 == 1 && tb.is_none_or(|tb| x >> tb & 1 == 0))
            .count();
        best = best.min(cut);
    }
    Ok(best)
}

/// Tight sets by full enumeration: `T_v` is the intersection and `M_v` the
/// union of every vertex set containing `v` whose in-degree equals
/// `λ(r, v)`.
pub fn tight_sets_bruteforce<G: Digraph>(g: &G, v: usize) -> Result<TightSets, Error> {
    let lambda = lambda_bruteforce(g, v)?;
    let (verts, bit) = vertex_bits(g);
    let k = verts.len();
    let vb = bit[v].expect("non-root vertex has a bit");
    let mut t_acc = (1u64 << k) - 1;
    let mut m_acc = 0u64;
    for x in 0u64..1 << k {
        if x >> vb & 1 == 0 {
            continue;
        }
        let xs: VertexSet = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| x >> i & 1 == 1)
            .map(|(_, &w)| w)
            .collect();
        if crate::graph::rho(g, &xs) == lambda {
            t_acc &= x;
            m_acc |= x;
        }
    }
    let to_set = |mask: u64| -> VertexSet {
        verts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &w)| w)
            .collect()
    };
    Ok(TightSets {
        vertex: v,
        lambda,
        t_min: to_set(t_acc),
        m_max: to_set(m_acc),
    })
}

/// Edge-bitmask tables for one graph: for every subset of the non-isolated
/// non-root vertices, the mask of edges entering it. Connectivity inside
/// any edge subset `F` is then a minimum of popcounts, independent of the
/// augmenting-path implementation.
pub(crate) struct MaskOracle {
    verts: Vec<usize>,
    bit: Vec<Option<usize>>,
    entering: Vec<u64>,
    in_mask: Vec<u64>,
    pub present: u64,
    pub allowed: u64,
}

impl MaskOracle {
    pub fn build<G: Digraph>(g: &G) -> Result<Self, Error> {
        let m = g.edge_slots();
        if m > 63 {
            return Err(Error::SizeGuard {
                what: "edge count",
                actual: m,
                limit: 63,
            });
        }
        let touched: Vec<bool> = {
            let mut t = vec![false; g.vertex_count()];
            for e in 0..m {
                if g.has_edge(e) {
                    let (a, b) = g.endpoints(e);
                    t[a] = true;
                    t[b] = true;
                }
            }
            t
        };
        let verts: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| v != g.root() && touched[v])
            .collect();
        let k = verts.len();
        if k > BRUTE_VERTEX_LIMIT {
            return Err(Error::SizeGuard {
                what: "non-isolated vertex count",
                actual: k,
                limit: BRUTE_VERTEX_LIMIT,
            });
        }
        let mut bit = vec![None; g.vertex_count()];
        for (i, &v) in verts.iter().enumerate() {
            bit[v] = Some(i);
        }
        let mut in_mask = vec![0u64; g.vertex_count()];
        let mut present = 0u64;
        let mut allowed = 0u64;
        for e in 0..m {
            if !g.has_edge(e) {
                continue;
            }
            present |= 1 << e;
            let (_, h) = g.endpoints(e);
            if h != g.root() {
                allowed |= 1 << e;
                in_mask[h] |= 1 << e;
            }
        }
        let mut entering = vec![0u64; 1 << k];
        for (x, slot) in entering.iter_mut().enumerate() {
            for e in 0..m {
                if present >> e & 1 == 0 {
                    continue;
                }
                let (t, h) = g.endpoints(e);
                let head_in = bit[h].map(|b| x >> b & 1 == 1).unwrap_or(false);
                let tail_in = bit[t].map(|b| x >> b & 1 == 1).unwrap_or(false);
                if head_in && !tail_in {
                    *slot |= 1 << e;
                }
            }
        }
        Ok(MaskOracle {
            verts,
            bit,
            entering,
            in_mask,
            present,
            allowed,
        })
    }

    /// Connectivity from the root to `v` inside the edge subset `f`.
    pub fn lambda(&self, f: u64, v: usize) -> usize {
        let Some(vb) = self.bit[v] else { return 0 };
        let mut best = usize::MAX;
        for (x, mask) in self.entering.iter().enumerate() {
            if x >> vb & 1 == 1 {
                best = best.min((mask & f).count_ones() as usize);
            }
        }
        best
    }

    pub fn in_degree(&self, f: u64, v: usize) -> usize {
        (self.in_mask[v] & f).count_ones() as usize
    }

    /// First vertex where in-degree and connectivity inside `f` disagree.
    pub fn first_violation(&self, f: u64) -> Option<(usize, usize, usize)> {
        for &v in &self.verts {
            let indeg = self.in_degree(f, v);
            if indeg == 0 {
                continue;
            }
            let vb = self.bit[v].expect("tracked vertex");
            // Early out as soon as some cut drops below the in-degree.
            let mut best = indeg;
            for (x, mask) in self.entering.iter().enumerate() {
                if x >> vb & 1 == 1 {
                    best = best.min((mask & f).count_ones() as usize);
                    if best < indeg {
                        return Some((v, indeg, self.lambda(f, v)));
                    }
                }
            }
        }
        None
    }

    pub fn is_flame(&self, f: u64) -> bool {
        self.first_violation(f).is_none()
    }

    pub fn sum_lambda(&self, f: u64) -> usize {
        self.verts.iter().map(|&v| self.lambda(f, v)).sum()
    }
}

/// Iterator over all `k`-element subsets of `0..n` as bitmasks, ascending
/// (Gosper's hack).
struct Combinations {
    cur: u64,
    limit: u64,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        assert!(k <= n && n < 64);
        Combinations {
            cur: if k == 0 { 0 } else { (1 << k) - 1 },
            limit: 1 << n,
            done: false,
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done || self.cur >= self.limit {
            self.done = true;
            return None;
        }
        let c = self.cur;
        if c == 0 {
            self.done = true;
            return Some(0);
        }
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        self.cur = (((ripple ^ c) >> 2) / low) | ripple;
        Some(c)
    }
}

fn mask_to_set(mask: u64) -> EdgeSet {
    (0..64).filter(|&e| mask >> e & 1 == 1).collect()
}

#[cfg(test)]
fn set_to_mask(set: &EdgeSet) -> u64 {
    set.iter().fold(0u64, |m, &e| m | 1 << e)
}

fn edge_guard(d: &RootedDigraph, limit: usize) -> Result<(), Error> {
    if d.edge_count() > limit {
        return Err(Error::SizeGuard {
            what: "edge count",
            actual: d.edge_count(),
            limit,
        });
    }
    Ok(())
}

/// All maximal flames of `d` by exhaustive enumeration: subsets avoiding
/// root in-edges, of size `Σ λ(r, v)`, whose every in-degree matches the
/// cut-enumeration connectivity. Canonically sorted.
pub fn enumerate_maximal_flames(d: &RootedDigraph) -> Result<Vec<EdgeSet>, Error> {
    edge_guard(d, BRUTE_EDGE_LIMIT)?;
    let oracle = MaskOracle::build(d)?;
    let target = oracle.sum_lambda(oracle.present);
    let allowed_ids: Vec<usize> = (0..d.edge_count()).filter(|&e| !d.enters_root(e)).collect();
    assert!(target <= allowed_ids.len(), "a maximal flame always exists");
    let mut found = Vec::new();
    for positions in Combinations::new(allowed_ids.len(), target) {
        let mut f = 0u64;
        for (i, &e) in allowed_ids.iter().enumerate() {
            if positions >> i & 1 == 1 {
                f |= 1 << e;
            }
        }
        if oracle.is_flame(f) {
            found.push(mask_to_set(f));
        }
    }
    found.sort();
    Ok(found)
}

/// Minimum-weight element of `enumerate_maximal_flames`, ties broken by
/// the canonical sorted-id-list order.
pub fn bruteforce_min_weight_flame(
    d: &RootedDigraph,
    weights: &[Weight],
) -> Result<(EdgeSet, Weight), Error> {
    assert_eq!(weights.len(), d.edge_count());
    let flames = enumerate_maximal_flames(d)?;
    let mut best: Option<(EdgeSet, Weight)> = None;
    for f in flames {
        let w = Weight::sum(f.iter().map(|&e| weights[e]));
        match &best {
            Some((_, bw)) if *bw <= w => {}
            _ => best = Some((f, w)),
        }
    }
    Ok(best.expect("at least one maximal flame exists"))
}

/// Outcome of one exhaustive structure check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub property: String,
    pub instances: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckReport {
    fn pass(property: impl Into<String>, instances: usize) -> Self {
        CheckReport {
            property: property.into(),
            instances,
            pass: true,
            witness: None,
        }
    }

    fn fail(property: impl Into<String>, instances: usize, witness: String) -> Self {
        CheckReport {
            property: property.into(),
            instances,
            pass: false,
            witness: Some(witness),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check {} instances {} {}",
            self.property,
            self.instances,
            if self.pass { "pass" } else { "FAIL" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\nwitness: {w}")?;
        }
        Ok(())
    }
}

fn format_set(set: &EdgeSet) -> String {
    let items: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Exhaustive exchange-property check: enumerate every subflame (subsets
/// of the non-root-entering edges that are flames) and verify that any
/// smaller subflame can be augmented from any larger one by a single edge.
pub fn check_greedoid(d: &RootedDigraph) -> Result<CheckReport, Error> {
    edge_guard(d, GREEDOID_EDGE_LIMIT)?;
    let oracle = MaskOracle::build(d)?;
    let mut subflames: Vec<u64> = Vec::new();
    let mut is_subflame = vec![false; 1usize << d.edge_count()];
    let mut sub = oracle.allowed;
    loop {
        if oracle.is_flame(sub) {
            is_subflame[sub as usize] = true;
            subflames.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & oracle.allowed;
    }
    subflames.sort_by_key(|&f| (f.count_ones(), f));
    let mut instances = 0;
    for (i, &f1) in subflames.iter().enumerate() {
        for &f2 in &subflames[i..] {
            if f2.count_ones() <= f1.count_ones() {
                continue;
            }
            instances += 1;
            let mut diff = f2 & !f1;
            let mut augmentable = false;
            while diff != 0 {
                let b = diff & diff.wrapping_neg();
                if is_subflame[(f1 | b) as usize] {
                    augmentable = true;
                    break;
                }
                diff ^= b;
            }
            if !augmentable {
                return Ok(CheckReport::fail(
                    "greedoid-exchange",
                    instances,
                    format!(
                        "graph {:?} smaller {} larger {}: no single-edge augmentation",
                        d.to_text(),
                        format_set(&mask_to_set(f1)),
                        format_set(&mask_to_set(f2)),
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::pass("greedoid-exchange", instances))
}

/// All bases of the direct sum of the per-vertex gammoids: the Cartesian
/// product of per-vertex base lists, each found by evaluating gammoid
/// independence on every subset of the vertex's in-edges. Canonically
/// sorted.
pub fn enumerate_matroid_sum_bases(d: &RootedDigraph) -> Result<Vec<EdgeSet>, Error> {
    let mut product: Vec<EdgeSet> = vec![EdgeSet::new()];
    for v in d.non_root_vertices() {
        let ground = d.in_edge_ids(v);
        let k = ground.len();
        if k > GROUND_SET_LIMIT {
            return Err(Error::SizeGuard {
                what: "in-degree",
                actual: k,
                limit: GROUND_SET_LIMIT,
            });
        }
        // Mask 0 contributes the empty set, which stays iff the rank is 0.
        let mut rank = 0;
        let mut bases_v: Vec<EdgeSet> = Vec::new();
        for mask in 0u32..1 << k {
            let set: EdgeSet = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if crate::gammoid::gammoid_independent(d, v, &set).expect("subset of in-edges") {
                if set.len() > rank {
                    rank = set.len();
                    bases_v.clear();
                }
                if set.len() == rank {
                    bases_v.push(set);
                }
            }
        }
        if product.len().saturating_mul(bases_v.len()) > BASE_PRODUCT_LIMIT {
            return Err(Error::SizeGuard {
                what: "matroid base count",
                actual: product.len().saturating_mul(bases_v.len()),
                limit: BASE_PRODUCT_LIMIT,
            });
        }
        product = product
            .iter()
            .flat_map(|acc| {
                bases_v.iter().map(move |b| {
                    let mut joined = acc.clone();
                    joined.extend(b.iter().copied());
                    joined
                })
            })
            .collect();
    }
    product.sort();
    Ok(product)
}

/// Exhaustive downward-closure and augmentation check of gammoid
/// independence on the in-edges of `v`.
pub fn check_matroid_axioms(d: &RootedDigraph, v: usize) -> Result<CheckReport, Error> {
    const IN_DEGREE_LIMIT: usize = 8;
    let ground: Vec<usize> = d.in_edge_ids(v).to_vec();
    let k = ground.len();
    if k > IN_DEGREE_LIMIT {
        return Err(Error::SizeGuard {
            what: "in-degree",
            actual: k,
            limit: IN_DEGREE_LIMIT,
        });
    }
    let name = format!("gammoid-matroid-axioms(v={v})");
    let subset = |mask: u32| -> EdgeSet {
        ground
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    };
    let indep: Vec<bool> = (0u32..1 << k)
        .map(|mask| {
            crate::gammoid::gammoid_independent(d, v, &subset(mask)).expect("subset of in-edges")
        })
        .collect();
    let mut instances = 0;
    if !indep[0] {
        return Ok(CheckReport::fail(name, 1, "empty set dependent".into()));
    }
    for mask in 0u32..1 << k {
        if !indep[mask as usize] {
            continue;
        }
        for i in 0..k {
            if mask >> i & 1 == 1 {
                instances += 1;
                if !indep[(mask ^ (1 << i)) as usize] {
                    return Ok(CheckReport::fail(
                        name,
                        instances,
                        format!(
                            "downward closure fails: {} independent, {} not",
                            format_set(&subset(mask)),
                            format_set(&subset(mask ^ (1 << i))),
                        ),
                    ));
                }
            }
        }
    }
    for x in 0u32..1 << k {
        if !indep[x as usize] {
            continue;
        }
        for y in 0u32..1 << k {
            if !indep[y as usize] || y.count_ones() <= x.count_ones() {
                continue;
            }
            instances += 1;
            let mut diff = y & !x;
            let mut ok = false;
            while diff != 0 {
                let b = diff & diff.wrapping_neg();
                if indep[(x | b) as usize] {
                    ok = true;
                    break;
                }
                diff ^= b;
            }
            if !ok {
                return Ok(CheckReport::fail(
                    name,
                    instances,
                    format!(
                        "augmentation fails from {} toward {}",
                        format_set(&subset(x)),
                        format_set(&subset(y)),
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::pass(name, instances))
}

/// Runs `check_matroid_axioms` on every vertex within the size guard.
pub fn check_matroid_axioms_all(d: &RootedDigraph) -> Result<CheckReport, Error> {
    let mut instances = 0;
    for v in d.non_root_vertices() {
        if d.in_edge_ids(v).len() > 8 {
            continue;
        }
        let report = check_matroid_axioms(d, v)?;
        instances += report.instances;
        if !report.pass {
            return Ok(CheckReport {
                property: "gammoid-matroid-axioms".into(),
                instances,
                pass: false,
                witness: report.witness,
            });
        }
    }
    Ok(CheckReport::pass("gammoid-matroid-axioms", instances))
}

/// For acyclic digraphs the maximal flames coincide with the bases of the
/// gammoid sum; compares both enumerations as sets.
pub fn check_dag_equivalence(d: &RootedDigraph) -> Result<CheckReport, Error> {
    if !crate::graph::is_acyclic(d) {
        return Err(Error::CyclicInput);
    }
    let flames = enumerate_maximal_flames(d)?;
    let bases = enumerate_matroid_sum_bases(d)?;
    let instances = flames.len().max(bases.len());
    if flames == bases {
        return Ok(CheckReport::pass("dag-base-flame-equivalence", instances));
    }
    let witness = flames
        .iter()
        .find(|f| !bases.contains(f))
        .map(|f| format!("maximal flame {} is not a base", format_set(f)))
        .or_else(|| {
            bases
                .iter()
                .find(|b| !flames.contains(b))
                .map(|b| format!("base {} is not a maximal flame", format_set(b)))
        })
        .unwrap_or_else(|| "enumeration multiplicity mismatch".into());
    Ok(CheckReport::fail(
        "dag-base-flame-equivalence",
        instances,
        witness,
    ))
}

/// Flow-based connectivity and tight sets against full cut enumeration,
/// for every non-root vertex.
pub fn check_lambda(d: &RootedDigraph) -> Result<CheckReport, Error> {
    let mut instances = 0;
    for v in d.non_root_vertices() {
        instances += 1;
        let flow = crate::connectivity::tight_sets(d, v);
        let brute = tight_sets_bruteforce(d, v)?;
        if flow != brute {
            return Ok(CheckReport::fail(
                "lambda-tight-sets",
                instances,
                format!("vertex {v}: flow {flow:?} vs enumeration {brute:?}"),
            ));
        }
    }
    Ok(CheckReport::pass("lambda-tight-sets", instances))
}

/// Full decomposition pipeline check: level head-sets, prefix in-degrees
/// and connectivities matching `min(λ, i)`, and the contracted-graph
/// spanning chain.
pub fn check_decomposition(d: &RootedDigraph) -> Result<CheckReport, Error> {
    use crate::decompose::{decompose_digraph, verify_spanning_chain, FlameMethod};
    use crate::graph::SubgraphView;

    let (_, dec) = decompose_digraph(d, FlameMethod::Peel)?;
    let targets = crate::connectivity::lambda_all(d);
    let mut instances = 0;
    for i in 1..=dec.depth() {
        if dec.branchings[i - 1].heads != dec.levels[i - 1] {
            return Ok(CheckReport::fail(
                "flame-decomposition",
                instances,
                format!("level {i} head-set differs from the level set"),
            ));
        }
        let prefix = dec.prefix(i);
        let view = SubgraphView::from_set(d, &prefix);
        for (&v, &target) in &targets {
            instances += 1;
            let expect = target.min(i);
            let rho_now = view.in_degree(v);
            let lambda_now = crate::connectivity::max_disjoint_paths(&view, v).value;
            if rho_now != expect || lambda_now != expect {
                return Ok(CheckReport::fail(
                    "flame-decomposition",
                    instances,
                    format!(
                        "prefix {i}, vertex {v}: in-degree {rho_now}, connectivity {lambda_now}, expected {expect}"
                    ),
                ));
            }
        }
    }
    if !verify_spanning_chain(d, &dec) {
        return Ok(CheckReport::fail(
            "flame-decomposition",
            instances,
            "branchings do not form spanning trees of the contracted graphs".into(),
        ));
    }
    Ok(CheckReport::pass("flame-decomposition", instances))
}

/// The built-in cyclic instance on which gammoid-sum bases and maximal
/// flames differ: 0→1, 1→2, 1→3, 2→3, 3→2 rooted at 0. It has four bases
/// and three maximal flames; {e0,e3,e4} is a base but not a flame.
pub fn builtin_counterexample() -> RootedDigraph {
    RootedDigraph::new(4, 0, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 2)]).unwrap()
}

/// A family of edge-disjoint branchings with the level head-sets of a
/// flame, some prefix union of which fails to be a flame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadFamilyWitness {
    /// Branchings for levels 1..=m, as host edge sets.
    pub branchings: Vec<EdgeSet>,
    /// Smallest level whose prefix union is not a flame.
    pub failing_prefix: usize,
}

fn lex_permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..d).collect();
    loop {
        out.push(items.clone());
        // next lexicographic permutation
        let Some(i) = (0..d - 1).rev().find(|&i| items[i] < items[i + 1]) else {
            break;
        };
        let j = (i + 1..d).rev().find(|&j| items[j] > items[i]).unwrap();
        items.swap(i, j);
        items[i + 1..].reverse();
    }
    out
}

fn branching_mask_is_forest(d: &RootedDigraph, mask: u64) -> bool {
    let mut uf = UnionFind::new(d.vertex_count());
    for e in 0..d.edge_count() {
        if mask >> e & 1 == 1 {
            let (t, h) = d.endpoints(e);
            if !uf.union(t, h) {
                return false;
            }
        }
    }
    true
}

/// Exhaustively searches the partitions of the edges of the flame `d` into
/// per-level branchings with the prescribed head-sets, returning the first
/// (in canonical order) whose some proper prefix union is not a flame.
/// Returns `None` when every valid family has flame prefixes.
pub fn search_bad_branching_family(
    d: &RootedDigraph,
) -> Result<Option<BadFamilyWitness>, Error> {
    edge_guard(d, FAMILY_EDGE_LIMIT)?;
    if let Some(e) = (0..d.edge_count()).find(|&e| d.enters_root(e)) {
        return Err(Error::EdgeEntersRoot { edge: e });
    }
    let oracle = MaskOracle::build(d)?;
    if let Some((vertex, in_degree, lambda)) = oracle.first_violation(oracle.present) {
        return Err(Error::NotAFlame {
            vertex,
            in_degree,
            lambda,
        });
    }
    let entered: Vec<usize> = d
        .non_root_vertices()
        .filter(|&v| !d.in_edge_ids(v).is_empty())
        .collect();
    let max_level = entered
        .iter()
        .map(|&v| d.in_edge_ids(v).len())
        .max()
        .unwrap_or(0);
    if max_level == 0 {
        return Ok(None);
    }
    let assignments: u128 = entered
        .iter()
        .map(|&v| (1..=d.in_edge_ids(v).len() as u128).product::<u128>())
        .product();
    if assignments > FAMILY_ASSIGNMENT_LIMIT {
        return Err(Error::SizeGuard {
            what: "branching assignments",
            actual: assignments.min(usize::MAX as u128) as usize,
            limit: FAMILY_ASSIGNMENT_LIMIT as usize,
        });
    }
    let perm_tables: Vec<Vec<Vec<usize>>> = entered
        .iter()
        .map(|&v| lex_permutations(d.in_edge_ids(v).len()))
        .collect();
    // Odometer over per-vertex permutations; the last entered vertex is the
    // fastest digit, so families appear in canonical order.
    let mut digit = vec![0usize; entered.len()];
    loop {
        let mut levels = vec![0u64; max_level];
        for (vi, &v) in entered.iter().enumerate() {
            let perm = &perm_tables[vi][digit[vi]];
            for (j, &e) in d.in_edge_ids(v).iter().enumerate() {
                levels[perm[j]] |= 1 << e;
            }
        }
        if levels.iter().all(|&b| branching_mask_is_forest(d, b)) {
            let mut prefix = 0u64;
            for (i, &b) in levels.iter().enumerate().take(max_level - 1) {
                prefix |= b;
                if !oracle.is_flame(prefix) {
                    return Ok(Some(BadFamilyWitness {
                        branchings: levels.iter().map(|&b| mask_to_set(b)).collect(),
                        failing_prefix: i + 1,
                    }));
                }
            }
        }
        // advance odometer
        let mut pos = entered.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digit[pos] += 1;
            if digit[pos] < perm_tables[pos].len() {
                break;
            }
            digit[pos] = 0;
        }
    }
}
