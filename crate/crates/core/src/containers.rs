//! Hypergraph containers for the corner hypergraph.
//!
//! Vertices are grid cells and edges are corners, so independent sets are
//! exactly the corner-free sets. A container family is a collection of
//! vertex sets with *coverage* (every independent set lies in some member)
//! and *sparsity* (every member spans at most `ε·e(H)` edges).
//!
//! The builder keeps a candidate set `S` and a set `F ⊆ S` of vertices
//! assumed to be in the independent set. If `e(H[S]) ≤ ε·e(H)`, `S` is
//! emitted. Otherwise it branches on a vertex `v ∈ S ∖ F` of maximum degree
//! in `H[S]` (ties to the lowest index):
//!
//! * `v` is not in the independent set: recurse on `S ∖ {v}`;
//! * `v` is in it: add `v` to `F` and drop from `S` every vertex `u` that
//!   would complete an edge of `H[S]` whose other vertices are all in `F`.
//!
//! Any independent set `I` with `F ⊆ I ⊆ S` follows one of the branches, so
//! coverage holds; emitted sets are sparse by the stopping rule.
//! Raising `ε` cuts the same search tree higher up, so the family never
//! grows with `ε`.

use alloc::vec::Vec;
use alloc::{format, vec};

use hashbrown::HashMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::grid::{enumerate_corners, GridParams};
use crate::{Error, Result};

/// Largest vertex count accepted by [`corner_hypergraph`].
pub const MAX_HYPERGRAPH_VERTICES: usize = 1 << 20;

/// An `r`-uniform hypergraph with sorted, deduplicated edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    r: usize,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Validates, sorts and deduplicates the edges.
    pub fn new(vertex_count: usize, r: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("uniformity r must be positive".into()));
        }
        if vertex_count > u32::MAX as usize {
            return Err(Error::TooLarge { what: "vertex count", limit: u32::MAX as usize });
        }
        let mut edges = edges;
        for e in &mut edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::InvalidArgument(format!("edge {e:?} does not have {r} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("edge {e:?} repeats a vertex")));
            }
            if e.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::InvalidArgument(format!("edge {e:?} has a vertex outside 0..{vertex_count}")));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { vertex_count, r, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Edges entirely inside `set`.
    pub fn edges_within(&self, set: &BitSet) -> usize {
        self.edges.iter().filter(|e| e.iter().all(|&v| set.contains(v as usize))).count()
    }

    pub fn is_independent(&self, set: &BitSet) -> bool {
        self.edges_within(set) == 0
    }

    fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    }
}

/// Cells as vertices (canonical order), one `(k+1)`-edge per corner.
pub fn corner_hypergraph(params: GridParams) -> Result<Hypergraph> {
    if params.cells() > MAX_HYPERGRAPH_VERTICES {
        return Err(Error::TooLarge { what: "vertex count of the corner hypergraph", limit: MAX_HYPERGRAPH_VERTICES });
    }
    let edges = enumerate_corners(params).map(|c| c.cells(&params).map(|x| x as u32).collect()).collect();
    Hypergraph::new(params.cells(), params.k() + 1, edges)
}

/// `Δ_j(H)`: the largest number of edges sharing a common `j`-set.
pub fn delta_j(h: &Hypergraph, j: usize) -> Result<usize> {
    if j == 0 || j > h.r {
        return Err(Error::InvalidArgument(format!("j = {j} outside 1..={}", h.r)));
    }
    if j == 1 {
        return Ok(h.degrees().into_iter().max().unwrap_or(0));
    }
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut sub = Vec::with_capacity(j);
    for e in &h.edges {
        for_each_subset(e, j, &mut sub, &mut |s| *counts.entry(s.to_vec()).or_insert(0) += 1);
    }
    Ok(counts.values().copied().max().unwrap_or(0))
}

fn for_each_subset(items: &[u32], j: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if buf.len() == j {
        f(buf);
        return;
    }
    let need = j - buf.len();
    for i in 0..items.len() {
        if items.len() - i < need {
            break;
        }
        buf.push(items[i]);
        for_each_subset(&items[i + 1..], j, buf, f);
        buf.pop();
    }
}

/// `Δ(H, τ)` and its ingredients.
#[derive(Clone, Debug, PartialEq)]
pub struct CodegreeProfile {
    pub r: usize,
    /// `Δ_1, …, Δ_r`.
    pub deltas: Vec<usize>,
    /// `d = r·e(H)/|V(H)|`.
    pub avg_degree: f64,
    pub tau: f64,
    /// `2^{C(r,2)−1} Σ_{j=2}^{r} 2^{−C(j−1,2)} Δ_j / (τ^{j−1} d)`.
    pub value: f64,
}

fn choose2(x: usize) -> f64 {
    (x * x.saturating_sub(1) / 2) as f64
}

pub fn codegree(h: &Hypergraph, tau: f64) -> Result<CodegreeProfile> {
    if h.edge_count() == 0 {
        return Err(Error::UndefinedProfile);
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Domain(format!("τ = {tau} must lie in (0, 1)")));
    }
    let r = h.r;
    let deltas = (1..=r).map(|j| delta_j(h, j)).collect::<Result<Vec<_>>>()?;
    let d = (r * h.edge_count()) as f64 / h.vertex_count as f64;
    let sum: f64 = (2..=r)
        .map(|j| libm::exp2(-choose2(j - 1)) * deltas[j - 1] as f64 / (libm::pow(tau, (j - 1) as f64) * d))
        .sum();
    let value = libm::exp2(choose2(r) - 1.0) * sum;
    Ok(CodegreeProfile { r, deltas, avg_degree: d, tau, value })
}

fn factorial(r: usize) -> f64 {
    (1..=r).map(|i| i as f64).product()
}

/// Whether the container theorem's quantitative hypotheses hold.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub r: usize,
    pub epsilon: f64,
    pub tau: f64,
    /// `0 < ε < 1/2` and `0 < τ < 1/2`.
    pub parameters_in_range: bool,
    /// `1/(200·r·r!²)`.
    pub tau_limit: f64,
    pub tau_ok: bool,
    /// `Δ(H, τ)`; `None` for an edgeless hypergraph or `τ` outside `(0, 1)`.
    pub codegree: Option<f64>,
    /// `ε/(12·r!)`.
    pub codegree_limit: f64,
    pub codegree_ok: bool,
    /// `1000·r·r!³`, the bound on the constant in the family-size estimate.
    pub c_r_bound: f64,
}

impl HypothesisReport {
    pub fn all_met(&self) -> bool {
        self.parameters_in_range && self.tau_ok && self.codegree_ok
    }
}

pub fn check_hypotheses(h: &Hypergraph, epsilon: f64, tau: f64) -> HypothesisReport {
    let r = h.r;
    let rf = factorial(r);
    let tau_limit = 1.0 / (200.0 * r as f64 * rf * rf);
    let codegree_limit = epsilon / (12.0 * rf);
    let codegree = codegree(h, tau).ok().map(|p| p.value);
    HypothesisReport {
        r,
        epsilon,
        tau,
        parameters_in_range: epsilon > 0.0 && epsilon < 0.5 && tau > 0.0 && tau < 0.5,
        tau_limit,
        tau_ok: tau < tau_limit,
        codegree,
        codegree_limit,
        codegree_ok: codegree.is_some_and(|c| c <= codegree_limit),
        c_r_bound: 1000.0 * r as f64 * rf * rf * rf,
    }
}

/// `c·|V|·τ·log(1/ε)·log(1/τ)` (natural logs) with `c` the given constant.
pub fn family_size_budget(c: f64, vertex_count: usize, epsilon: f64, tau: f64) -> f64 {
    c * vertex_count as f64 * tau * libm::log(1.0 / epsilon) * libm::log(1.0 / tau)
}

/// Size guard for [`build_containers`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    pub max_containers: usize,
    pub max_nodes: u64,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits { max_containers: 1_000_000, max_nodes: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainerSet {
    pub vertex_count: usize,
    pub epsilon: f64,
    /// Sorted vertex lists, deduplicated and in lexicographic order.
    pub containers: Vec<Vec<u32>>,
    /// `e(H[S])` per container, aligned with `containers`.
    pub edge_counts: Vec<usize>,
    /// `e(H)`.
    pub total_edges: usize,
}

impl ContainerSet {
    pub fn len(&self) -> usize {
        self.containers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.containers.is_empty()
    }

    pub fn max_size(&self) -> usize {
        self.containers.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Σ_S 2^{|S|}`, an upper bound on the number of independent sets under coverage.
    pub fn power_sum(&self) -> num_bigint::BigUint {
        let one = num_bigint::BigUint::from(1u32);
        self.containers.iter().map(|c| &one << c.len()).sum()
    }

    pub fn as_bitsets(&self) -> Vec<BitSet> {
        self.containers
            .iter()
            .map(|c| BitSet::from_indices(self.vertex_count, c.iter().map(|&v| v as usize)))
            .collect()
    }

    /// Builds a family from explicit vertex lists (sorted and deduplicated).
    pub fn from_lists(h: &Hypergraph, epsilon: f64, lists: Vec<Vec<u32>>) -> Result<Self> {
        let mut containers = Vec::with_capacity(lists.len());
        for mut c in lists {
            c.sort_unstable();
            c.dedup();
            if c.iter().any(|&v| v as usize >= h.vertex_count) {
                return Err(Error::InvalidArgument(format!("container vertex outside 0..{}", h.vertex_count)));
            }
            containers.push(c);
        }
        containers.sort();
        containers.dedup();
        let edge_counts = containers
            .iter()
            .map(|c| h.edges_within(&BitSet::from_indices(h.vertex_count, c.iter().map(|&v| v as usize))))
            .collect();
        Ok(ContainerSet { vertex_count: h.vertex_count, epsilon, containers, edge_counts, total_edges: h.edge_count() })
    }
}

/// Runs the branching construction described in the module docs.
pub fn build_containers(h: &Hypergraph, epsilon: f64, limits: BuildLimits) -> Result<ContainerSet> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Domain(format!("ε = {epsilon} must lie in (0, 1]")));
    }
    let mut b = Builder {
        h,
        incidence: h.incidence(),
        threshold: epsilon * h.edge_count() as f64,
        limits,
        nodes: 0,
        out: Vec::new(),
    };
    let all = BitSet::full(h.vertex_count);
    b.build(all, BitSet::new(h.vertex_count))?;
    let lists = b.out.iter().map(|s| s.iter().map(|v| v as u32).collect()).collect();
    ContainerSet::from_lists(h, epsilon, lists)
}

struct Builder<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<u32>>,
    threshold: f64,
    limits: BuildLimits,
    nodes: u64,
    out: Vec<BitSet>,
}

impl Builder<'_> {
    fn build(&mut self, s: BitSet, f: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            return Err(Error::TooLarge { what: "container search nodes", limit: self.limits.max_nodes as usize });
        }
        let inside: Vec<&Vec<u32>> =
            self.h.edges.iter().filter(|e| e.iter().all(|&v| s.contains(v as usize))).collect();
        if inside.len() as f64 <= self.threshold {
            if self.out.len() >= self.limits.max_containers {
                return Err(Error::TooLarge { what: "container family", limit: self.limits.max_containers });
            }
            self.out.push(s);
            return Ok(());
        }
        let mut deg = vec![0usize; self.h.vertex_count];
        for e in &inside {
            for &v in e.iter() {
                deg[v as usize] += 1;
            }
        }
        let v = s
            .iter()
            .filter(|&u| !f.contains(u))
            .max_by_key(|&u| (deg[u], core::cmp::Reverse(u)))
            .expect("an edge inside S has a vertex outside F");

        let mut without = s.clone();
        without.remove(v);
        self.build(without, f.clone())?;

        let mut kept = f;
        kept.insert(v);
        let mut pruned = s;
        let mut feasible = true;
        for &ei in &self.incidence[v] {
            let e = &self.h.edges[ei as usize];
            if !e.iter().all(|&u| pruned.contains(u as usize) || kept.contains(u as usize)) {
                continue;
            }
            let open: Vec<u32> = e.iter().copied().filter(|&u| !kept.contains(u as usize)).collect();
            match open.as_slice() {
                [] => feasible = false,
                [u] => {
                    pruned.remove(*u as usize);
                }
                _ => {}
            }
        }
        // edges through v are the only ones that can become nearly kept
        if feasible {
            self.build(pruned, kept)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationMode {
    /// Every maximal independent set was enumerated.
    Exhaustive,
    /// Random greedy maximal independent sets; coverage is only sampled.
    Sampled { samples: usize, seed: u64 },
}

/// Largest vertex count for exhaustive verification.
pub const VERIFY_EXHAUSTIVE_MAX: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 10_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub mode: VerificationMode,
    /// Maximal independent sets checked against the family.
    pub sets_checked: usize,
    /// Coverage: every checked independent set lies in a container.
    pub covers: bool,
    /// First independent set found outside every container.
    pub uncovered: Option<Vec<u32>>,
    /// Sparsity: every container spans at most `ε·e(H)` edges.
    pub sparse: bool,
    /// Largest `e(H[S])` over the family.
    pub max_edges: usize,
    pub family_size: usize,
    /// `ln |C|`, compared against the family-size budget by callers.
    pub log_family_size: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.covers && self.sparse
    }
}

pub fn verify_containers(h: &Hypergraph, family: &ContainerSet, epsilon: f64, opts: VerifyOptions) -> VerificationReport {
    let sets = family.as_bitsets();
    let max_edges = sets.iter().map(|s| h.edges_within(s)).max().unwrap_or(0);
    let sparse = max_edges as f64 <= epsilon * h.edge_count() as f64;
    let mut checked = 0usize;
    let mut uncovered = None;
    let mut check = |i: &BitSet| {
        checked += 1;
        if uncovered.is_none() && !sets.iter().any(|s| i.is_subset(s)) {
            uncovered = Some(i.iter().map(|v| v as u32).collect());
        }
    };
    let mode = if h.vertex_count <= VERIFY_EXHAUSTIVE_MAX {
        for_each_maximal_independent(h, &mut |m| check(&BitSet::from_u128(h.vertex_count, m as u128)));
        VerificationMode::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let incidence = h.incidence();
        let mut order: Vec<usize> = (0..h.vertex_count).collect();
        for _ in 0..opts.samples {
            order.shuffle(&mut rng);
            let mut set = BitSet::new(h.vertex_count);
            for &v in &order {
                let blocked = incidence[v].iter().any(|&e| {
                    h.edges[e as usize].iter().all(|&u| u as usize == v || set.contains(u as usize))
                });
                if !blocked {
                    set.insert(v);
                }
            }
            check(&set);
        }
        VerificationMode::Sampled { samples: opts.samples, seed: opts.seed }
    };
    VerificationReport {
        mode,
        sets_checked: checked,
        covers: uncovered.is_none(),
        uncovered,
        sparse,
        max_edges,
        family_size: family.len(),
        log_family_size: libm::log(family.len() as f64),
    }
}

/// Calls `f` on every maximal independent set of a hypergraph with at most
/// 64 vertices, as bit masks.
pub fn for_each_maximal_independent(h: &Hypergraph, f: &mut impl FnMut(u64)) {
    assert!(h.vertex_count <= 64, "mask enumeration needs at most 64 vertices");
    let masks: Vec<u64> = h.edges.iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    let mut by_vertex = vec![Vec::new(); h.vertex_count];
    for &m in &masks {
        for v in 0..h.vertex_count {
            if m >> v & 1 == 1 {
                by_vertex[v].push(m);
            }
        }
    }
    // v can be added to I iff no edge through v has its other vertices in I
    let addable = |i: u64, v: usize| by_vertex[v].iter().all(|&m| (m & !(1 << v)) & !i != 0);
    fn rec(v: usize, n: usize, i: u64, addable: &dyn Fn(u64, usize) -> bool, f: &mut dyn FnMut(u64)) {
        if v == n {
            if (0..n).all(|u| i >> u & 1 == 1 || !addable(i, u)) {
                f(i);
            }
            return;
        }
        if addable(i, v) {
            rec(v + 1, n, i | 1 << v, addable, f);
        }
        rec(v + 1, n, i, addable, f);
    }
    rec(0, h.vertex_count, 0, &addable, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, k: usize) -> Hypergraph {
        corner_hypergraph(GridParams::new(n, k).unwrap()).unwrap()
    }

    #[test]
    fn corner_hypergraph_shapes() {
        let h = hg(2, 2);
        assert_eq!((h.vertex_count(), h.edge_count(), h.r()), (4, 1, 3));
        assert_eq!(hg(3, 2).edge_count(), 5);
        assert_eq!(hg(1, 4).edge_count(), 0);
        assert_eq!(hg(1, 4).vertex_count(), 1);
    }

    #[test]
    fn deltas() {
        let h = hg(3, 2);
        assert_eq!(delta_j(&h, 1).unwrap(), 3);
        assert_eq!(delta_j(&h, 2).unwrap(), 1);
        assert_eq!(delta_j(&h, 3).unwrap(), 1);
        assert!(delta_j(&h, 0).is_err());
        assert!(delta_j(&h, 4).is_err());
        let sum: usize = h.degrees().iter().sum();
        assert_eq!(sum, 3 * h.edge_count());
    }

    #[test]
    fn codegree_hand_value() {
        let p = codegree(&hg(2, 2), 0.5).unwrap();
        assert!((p.value - 64.0 / 3.0).abs() < 1e-12);
        assert_eq!(p.avg_degree, 0.75);
        assert!(matches!(codegree(&hg(1, 2), 0.5), Err(Error::UndefinedProfile)));
        assert!(codegree(&hg(3, 2), 0.3).unwrap().value > codegree(&hg(3, 2), 0.4).unwrap().value);
    }

    #[test]
    fn hypotheses() {
        let r = check_hypotheses(&hg(3, 2), 0.25, 0.4);
        assert!(!r.tau_ok);
        assert!((r.tau_limit - 1.0 / 21600.0).abs() < 1e-18);
        let r = check_hypotheses(&hg(3, 2), 0.25, 1e-9);
        assert!(r.tau_ok && !r.codegree_ok);
    }

    #[test]
    fn dedup_rejects_multiplicity() {
        let h = Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(Hypergraph::new(3, 2, vec![vec![0, 0]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 3]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn build_and_verify_small() {
        for (n, k) in [(2, 2), (3, 2), (2, 3)] {
            let h = hg(n, k);
            for eps in [0.1, 0.5, 1.0] {
                let c = build_containers(&h, eps, BuildLimits::default()).unwrap();
                let rep = verify_containers(&h, &c, eps, VerifyOptions::default());
                assert!(rep.passed(), "n={n} k={k} eps={eps}: {rep:?}");
                assert_eq!(rep.mode, VerificationMode::Exhaustive);
            }
        }
        let h = hg(2, 2);
        let c = build_containers(&h, 0.5, BuildLimits::default()).unwrap();
        assert!(c.edge_counts.iter().all(|&e| e == 0));
        assert!(c.power_sum() >= 14u32.into());
    }

    #[test]
    fn trivial_families() {
        let h = hg(3, 2);
        let c = build_containers(&h, 1.0, BuildLimits::default()).unwrap();
        assert_eq!(c.containers, vec![(0..9).collect::<Vec<u32>>()]);
        let h0 = Hypergraph::new(5, 3, vec![]).unwrap();
        assert_eq!(build_containers(&h0, 0.1, BuildLimits::default()).unwrap().len(), 1);
        let everything = ContainerSet::from_lists(&h, 0.5, vec![(0..9).collect()]).unwrap();
        let rep = verify_containers(&h, &everything, 0.5, VerifyOptions::default());
        assert!(rep.covers && !rep.sparse);
    }

    #[test]
    fn dropped_container_is_caught() {
        let h = hg(3, 2);
        let mut c = build_containers(&h, 0.2, BuildLimits::default()).unwrap();
        assert!(c.len() > 1);
        c.containers.remove(0);
        let rep = verify_containers(&h, &c, 0.2, VerifyOptions::default());
        assert!(!rep.covers);
        let bad = BitSet::from_indices(9, rep.uncovered.unwrap().iter().map(|&v| v as usize));
        assert!(h.is_independent(&bad));
    }

    #[test]
    fn family_shrinks_with_epsilon() {
        let h = hg(3, 2);
        let mut last = usize::MAX;
        for eps in [0.05, 0.2, 0.4, 0.6, 0.8, 1.0] {
            let c = build_containers(&h, eps, BuildLimits::default()).unwrap();
            assert!(c.len() <= last);
            last = c.len();
        }
    }

    #[test]
    fn size_guard_fails_explicitly() {
        let h = hg(4, 2);
        let r = build_containers(&h, 0.01, BuildLimits { max_containers: 2, max_nodes: 1_000 });
        assert!(matches!(r, Err(Error::TooLarge { .. })));
    }

    #[test]
    fn maximal_sets_of_single_corner() {
        let h = hg(2, 2);
        let mut all = Vec::new();
        for_each_maximal_independent(&h, &mut |m| all.push(m));
        all.sort();
        // drop exactly one cell of the corner {0, 1, 2}; cell 3 is free
        assert_eq!(all, vec![0b1011, 0b1101, 0b1110]);
    }
}
