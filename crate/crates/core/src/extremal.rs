//! Exact and bounded computation of `c_k(n)`, the largest corner-free subset of `[n]^k`.
//!
//! The maximum search is a branch-and-bound over cells ordered by
//! descending corner incidence. Its upper bound is `|included| +
//! |undecided|` minus a greedy packing of live corners with pairwise
//! disjoint undecided parts: every such corner forces at least one more
//! deletion. The only symmetry used is the axis-permutation group, applied
//! by orbital branching at the root.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use num_bigint::BigUint;

use crate::grid::{for_each_k_subset, CornerMasks, GridParams, GridSet};
use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Exact,
    Bounded,
}

/// Known value or bounds for `c_k(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub k: usize,
    pub n: usize,
    pub status: Status,
    pub lower: usize,
    pub upper: usize,
    /// Corner-free set of size `lower`; always present for exact records.
    pub witness: Option<GridSet>,
    pub method: String,
}

impl ExtremalRecord {
    pub fn value(&self) -> Option<usize> {
        (self.status == Status::Exact).then_some(self.lower)
    }

    /// Checks `lower ≤ upper` and, for exact records, the witness.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::VerificationFailed { property: msg });
        if self.lower > self.upper {
            return fail(format!("c_{}({}) record has lower {} > upper {}", self.k, self.n, self.lower, self.upper));
        }
        if let Some(w) = &self.witness {
            if w.params().n() != self.n || w.params().k() != self.k {
                return fail(format!("witness grid does not match c_{}({})", self.k, self.n));
            }
            if w.len() != self.lower {
                return fail(format!("witness size {} differs from lower bound {}", w.len(), self.lower));
            }
            if !crate::grid::is_corner_free(w) {
                return fail(format!("witness for c_{}({}) contains a corner", self.k, self.n));
            }
        }
        if self.status == Status::Exact && (self.lower != self.upper || self.witness.is_none()) {
            return fail(format!("exact record for c_{}({}) lacks a matching witness", self.k, self.n));
        }
        Ok(())
    }
}

/// Computes `c_k(n)` by branch-and-bound; a bounded record when the node budget runs out.
pub fn exact_c(params: GridParams, limits: Limits) -> Result<ExtremalRecord> {
    if params.cells() > limits.max_cells {
        return Err(Error::TooLarge { what: "cell count for the extremal solver", limit: limits.max_cells });
    }
    let cm = CornerMasks::new(params)?;
    let mut solver = MaxSolver::new(&cm, limits.max_nodes);
    solver.run();
    let best_size = solver.best.count_ones() as usize;
    let witness = Some(GridSet::from_mask(params, solver.best));
    let record = if solver.exhausted {
        ExtremalRecord {
            k: params.k(),
            n: params.n(),
            status: Status::Bounded,
            lower: best_size,
            upper: (solver.open_upper as usize).max(best_size).min(params.cells()),
            witness,
            method: "branch-and-bound (node budget exhausted)".into(),
        }
    } else {
        ExtremalRecord {
            k: params.k(),
            n: params.n(),
            status: Status::Exact,
            lower: best_size,
            upper: best_size,
            witness,
            method: "branch-and-bound".into(),
        }
    };
    record.validate()?;
    Ok(record)
}

struct MaxSolver<'a> {
    cm: &'a CornerMasks,
    order: Vec<usize>,
    all: u128,
    r: u32,
    nodes: u64,
    budget: u64,
    best: u128,
    exhausted: bool,
    open_upper: u32,
}

impl<'a> MaxSolver<'a> {
    fn new(cm: &'a CornerMasks, budget: u64) -> Self {
        let mut order: Vec<usize> = (0..cm.params.cells()).collect();
        order.sort_by_key(|&c| (core::cmp::Reverse(cm.incidence[c].len()), c));
        MaxSolver {
            cm,
            order,
            all: cm.all_cells(),
            r: cm.params.k() as u32 + 1,
            nodes: 0,
            budget,
            best: 0,
            exhausted: false,
            open_upper: 0,
        }
    }

    fn run(&mut self) {
        // greedy incumbent in branch order
        let mut inc = 0u128;
        for &v in &self.order {
            if self.cm.is_free(inc | 1 << v) {
                inc |= 1 << v;
            }
        }
        self.best = inc;

        // orbital branching at the root: either the first cell is in some
        // optimum (up to axis permutation) or its whole orbit is excluded
        let v = self.order[0];
        let orbit = axis_orbit(&self.cm.params, v);
        self.nodes += 1;
        let (i2, x2) = self.include(0, 0, v);
        self.search(i2, x2);
        self.search(0, orbit);
    }

    fn include(&self, inc: u128, exc: u128, v: usize) -> (u128, u128) {
        let inc = inc | 1 << v;
        let mut exc = exc;
        for &e in &self.cm.incidence[v] {
            let e = self.cm.masks[e as usize];
            if e & exc != 0 {
                continue;
            }
            let rest = e & !inc;
            debug_assert!(rest != 0, "included cell completed a corner");
            if rest.count_ones() == 1 {
                exc |= rest;
            }
        }
        (inc, exc)
    }

    fn upper_bound(&self, inc: u128, exc: u128) -> u32 {
        let und = self.all & !(inc | exc);
        let mut used = 0u128;
        let mut packed = 0;
        for size in 2..=self.r {
            for &e in &self.cm.masks {
                if e & exc != 0 {
                    continue;
                }
                let eu = e & und;
                if eu.count_ones() == size && eu & used == 0 {
                    used |= eu;
                    packed += 1;
                }
            }
        }
        inc.count_ones() + und.count_ones() - packed
    }

    fn search(&mut self, inc: u128, exc: u128) {
        self.nodes += 1;
        let ub = self.upper_bound(inc, exc);
        if self.nodes > self.budget {
            self.exhausted = true;
            self.open_upper = self.open_upper.max(ub);
            return;
        }
        if ub <= self.best.count_ones() {
            return;
        }
        let und = self.all & !(inc | exc);
        if und == 0 {
            self.best = inc;
            return;
        }
        let v = *self.order.iter().find(|&&c| und >> c & 1 == 1).expect("undecided cell");
        let (i2, x2) = self.include(inc, exc, v);
        self.search(i2, x2);
        self.search(inc, exc | 1 << v);
    }
}

/// Cells obtained from `cell` by permuting coordinates, as a mask.
fn axis_orbit(params: &GridParams, cell: usize) -> u128 {
    let mut coords = params.point_of(cell).coords;
    coords.sort_unstable();
    let mut mask = 0u128;
    loop {
        let p = crate::grid::Point::new(coords.clone());
        mask |= 1 << params.cell_of(&p).expect("permuted point in grid");
        if !next_permutation(&mut coords) {
            return mask;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinCornersMethod {
    /// Exhaustive for `n^k ≤ 25`, branch-and-bound otherwise.
    Auto,
    Exhaustive,
    BranchAndBound,
}

/// Minimum of `Γ_k(A)` over `|A| = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCorners {
    pub s: usize,
    /// Best value found; the exact minimum when `exact`.
    pub value: u64,
    /// Proven lower bound; equals `value` when `exact`.
    pub lower: u64,
    pub witness: GridSet,
    pub exact: bool,
    pub method: MinCornersMethod,
}

/// Largest grid the exhaustive minimum-corner search accepts.
pub const EXHAUSTIVE_MIN_CELLS: usize = 25;

pub fn min_corners_at_size(params: GridParams, s: usize, limits: Limits) -> Result<MinCorners> {
    min_corners_with(params, s, limits, MinCornersMethod::Auto)
}

pub fn min_corners_with(
    params: GridParams,
    s: usize,
    limits: Limits,
    method: MinCornersMethod,
) -> Result<MinCorners> {
    let cells = params.cells();
    if s > cells {
        return Err(Error::InvalidArgument(format!("size {s} exceeds n^k = {cells}")));
    }
    if cells > limits.max_cells {
        return Err(Error::TooLarge { what: "cell count for the minimum-corner search", limit: limits.max_cells });
    }
    let method = match method {
        MinCornersMethod::Auto if cells <= EXHAUSTIVE_MIN_CELLS => MinCornersMethod::Exhaustive,
        MinCornersMethod::Auto => MinCornersMethod::BranchAndBound,
        m => m,
    };
    let cm = CornerMasks::new(params)?;
    match method {
        MinCornersMethod::Exhaustive => {
            if cells > EXHAUSTIVE_MIN_CELLS {
                return Err(Error::TooLarge { what: "cell count for exhaustive search", limit: EXHAUSTIVE_MIN_CELLS });
            }
            let masks: Vec<u32> = cm.masks.iter().map(|&m| m as u32).collect();
            let mut best = (u64::MAX, 0u32);
            for_each_k_subset(cells, s, |sub| {
                let c = masks.iter().filter(|&&m| m & sub == m).count() as u64;
                if c < best.0 {
                    best = (c, sub);
                }
            });
            Ok(MinCorners {
                s,
                value: best.0,
                lower: best.0,
                witness: GridSet::from_mask(params, best.1 as u128),
                exact: true,
                method,
            })
        }
        _ => {
            let mut bb = MinSolver {
                cm: &cm,
                s: s as u32,
                cells,
                nodes: 0,
                budget: limits.max_nodes,
                best: u64::MAX,
                best_set: 0,
                open_lower: u64::MAX,
                exhausted: false,
            };
            bb.search(0, 0, 0, 0);
            Ok(MinCorners {
                s,
                value: bb.best,
                lower: if bb.exhausted { bb.open_lower.min(bb.best) } else { bb.best },
                witness: GridSet::from_mask(params, bb.best_set),
                exact: !bb.exhausted,
                method: MinCornersMethod::BranchAndBound,
            })
        }
    }
}

struct MinSolver<'a> {
    cm: &'a CornerMasks,
    s: u32,
    cells: usize,
    nodes: u64,
    budget: u64,
    best: u64,
    best_set: u128,
    open_lower: u64,
    exhausted: bool,
}

impl MinSolver<'_> {
    /// Corners through `u` whose other cells are all in `inc`.
    fn marginal(&self, u: usize, inc: u128) -> u64 {
        let bit = 1u128 << u;
        self.cm.incidence[u]
            .iter()
            .filter(|&&e| {
                let e = self.cm.masks[e as usize] & !bit;
                e & inc == e
            })
            .count() as u64
    }

    fn search(&mut self, pos: usize, inc: u128, count: u64, size: u32) {
        if size == self.s {
            if count < self.best {
                self.best = count;
                self.best_set = inc;
            }
            return;
        }
        let need = (self.s - size) as usize;
        if need > self.cells - pos {
            return;
        }
        // each future cell adds at least its marginal w.r.t. the current set
        let mut margins: Vec<u64> = (pos..self.cells).map(|u| self.marginal(u, inc)).collect();
        margins.sort_unstable();
        let lb = count + margins[..need].iter().sum::<u64>();
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            self.open_lower = self.open_lower.min(lb);
            return;
        }
        if lb >= self.best {
            return;
        }
        let m = self.marginal(pos, inc);
        self.search(pos + 1, inc | 1 << pos, count + m, size + 1);
        self.search(pos + 1, inc, count, size);
    }
}

/// `⌈n/m⌉^k · c_k(m)`, an upper bound on `c_k(n)` from tiling `[n]^k` by translates of `[m]^k`.
pub fn subadditive_upper(n: usize, m: usize, k: usize, ck_m: usize) -> Result<u128> {
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!("tile side m={m} must satisfy 1 ≤ m < n={n}")));
    }
    let tiles = (n.div_ceil(m) as u128)
        .checked_pow(k as u32)
        .ok_or(Error::TooLarge { what: "tile count", limit: usize::MAX })?;
    tiles
        .checked_mul(ck_m as u128)
        .ok_or(Error::TooLarge { what: "subadditive bound", limit: usize::MAX })
}

/// What [`ExtremalTable::insert`] did with a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Merge {
    Inserted,
    Replaced,
    /// Existing bounds tightened by the new record.
    Tightened,
    /// The new record carried no new information.
    Kept,
}

/// Records keyed by `(k, n)`. Exact records are never overwritten by bounded ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtremalTable {
    records: BTreeMap<(usize, usize), ExtremalRecord>,
}

impl ExtremalTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, rec: ExtremalRecord) -> Result<Merge> {
        rec.validate()?;
        let key = (rec.k, rec.n);
        let Some(old) = self.records.get_mut(&key) else {
            self.records.insert(key, rec);
            return Ok(Merge::Inserted);
        };
        match (old.status, rec.status) {
            (Status::Exact, Status::Exact) => {
                if old.lower != rec.lower {
                    return Err(Error::VerificationFailed {
                        property: format!("conflicting exact values {} and {} for c_{}({})", old.lower, rec.lower, rec.k, rec.n),
                    });
                }
                Ok(Merge::Kept)
            }
            (Status::Exact, Status::Bounded) => {
                if rec.lower > old.lower || rec.upper < old.lower {
                    return Err(Error::VerificationFailed {
                        property: format!("bounds [{}, {}] contradict exact c_{}({}) = {}", rec.lower, rec.upper, rec.k, rec.n, old.lower),
                    });
                }
                Ok(Merge::Kept)
            }
            (Status::Bounded, Status::Exact) => {
                if rec.lower < old.lower || rec.lower > old.upper {
                    return Err(Error::VerificationFailed {
                        property: format!("exact c_{}({}) = {} outside known bounds [{}, {}]", rec.k, rec.n, rec.lower, old.lower, old.upper),
                    });
                }
                *old = rec;
                Ok(Merge::Replaced)
            }
            (Status::Bounded, Status::Bounded) => {
                let mut changed = false;
                if rec.lower > old.lower {
                    old.lower = rec.lower;
                    old.witness = rec.witness;
                    changed = true;
                }
                if rec.upper < old.upper {
                    old.upper = rec.upper;
                    changed = true;
                }
                if old.lower > old.upper {
                    return Err(Error::VerificationFailed {
                        property: format!("bounds for c_{}({}) crossed", rec.k, rec.n),
                    });
                }
                if changed {
                    old.method = rec.method;
                }
                Ok(if changed { Merge::Tightened } else { Merge::Kept })
            }
        }
    }

    pub fn get(&self, k: usize, n: usize) -> Option<&ExtremalRecord> {
        self.records.get(&(k, n))
    }

    pub fn exact_value(&self, k: usize, n: usize) -> Option<usize> {
        self.get(k, n).and_then(ExtremalRecord::value)
    }

    /// Exact `(n, c_k(n))` pairs for one dimension, increasing in `n`.
    pub fn exact_values(&self, k: usize) -> Vec<(usize, usize)> {
        self.records
            .range((k, 0)..=(k, usize::MAX))
            .filter_map(|(&(_, n), r)| r.value().map(|c| (n, c)))
            .collect()
    }

    pub fn records(&self) -> impl Iterator<Item = &ExtremalRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Smallest `⌈n/m⌉^k · upper(c_k(m))` over tabulated `m < n`, with the `m` attaining it.
    pub fn subadditive_bound(&self, k: usize, n: usize) -> Option<(u128, usize)> {
        self.records
            .range((k, 1)..(k, n))
            .filter_map(|(&(_, m), r)| subadditive_upper(n, m, k, r.upper).ok().map(|b| (b, m)))
            .min()
    }
}

/// One failed subadditivity check between two exact table entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubadditivityViolation {
    pub m: usize,
    pub n: usize,
    /// `"rate"` for `f(n) < 2^k f(m)`, `"tiling"` for `c_k(n) ≤ ⌈n/m⌉^k c_k(m)`.
    pub kind: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubadditivityReport {
    pub k: usize,
    pub pairs_checked: usize,
    pub violations: Vec<SubadditivityViolation>,
}

impl SubadditivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f(n) < 2^k f(m)` (with `f(n) = c_k(n)/n^k`) and the tiling bound
/// for every exact pair `m < n`, in exact integer arithmetic. A violation
/// indicates a wrong table entry, since both are theorems.
pub fn check_subadditivity(table: &ExtremalTable, k: usize) -> SubadditivityReport {
    let exact = table.exact_values(k);
    let mut report = SubadditivityReport { k, ..Default::default() };
    let big = |x: usize| BigUint::from(x);
    let two_k = BigUint::from(2u32).pow(k as u32);
    for (i, &(n, cn)) in exact.iter().enumerate() {
        for &(m, cm) in &exact[..i] {
            report.pairs_checked += 1;
            // c_n / n^k < 2^k c_m / m^k
            let lhs = big(cn) * big(m).pow(k as u32);
            let rhs = &two_k * big(cm) * big(n).pow(k as u32);
            if lhs >= rhs {
                report.violations.push(SubadditivityViolation { m, n, kind: "rate" });
            }
            let tiles = big(n.div_ceil(m)).pow(k as u32);
            if big(cn) > tiles * big(cm) {
                report.violations.push(SubadditivityViolation { m, n, kind: "tiling" });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{count_corners, is_corner_free};

    fn g(n: usize, k: usize) -> GridParams {
        GridParams::new(n, k).unwrap()
    }

    fn c(n: usize, k: usize) -> usize {
        let r = exact_c(g(n, k), Limits::default()).unwrap();
        assert_eq!(r.status, Status::Exact);
        r.lower
    }

    #[test]
    fn known_small_values() {
        for n in 2..=12 {
            assert_eq!(c(n, 1), 1, "c_1({n})");
        }
        assert_eq!(c(1, 1), 1);
        assert_eq!(c(1, 3), 1);
        assert_eq!(c(2, 2), 3);
        assert_eq!(c(3, 2), 7);
        assert_eq!(c(2, 3), 7);
    }

    #[test]
    fn witness_is_valid() {
        let r = exact_c(g(4, 2), Limits::default()).unwrap();
        let w = r.witness.as_ref().unwrap();
        assert!(is_corner_free(w));
        assert_eq!(w.len(), r.lower);
    }

    #[test]
    fn tiny_budget_gives_consistent_bounds() {
        let r = exact_c(g(5, 2), Limits::with_nodes(3)).unwrap();
        assert_eq!(r.status, Status::Bounded);
        let exact = c(5, 2);
        assert!(r.lower <= exact && exact <= r.upper, "{r:?} vs {exact}");
    }

    #[test]
    fn oversize_is_rejected() {
        assert!(matches!(exact_c(g(12, 2), Limits::default()), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn orbit_of_axis_permutations() {
        let p = g(3, 2);
        // (1,2) and (2,1)
        assert_eq!(axis_orbit(&p, 3), 1 << 3 | 1 << 1);
        assert_eq!(axis_orbit(&p, 4), 1 << 4);
        assert_eq!(axis_orbit(&g(2, 3), 1).count_ones(), 3);
    }

    #[test]
    fn min_corners_examples() {
        let p = g(3, 2);
        let l = Limits::default();
        for s in 0..=7 {
            assert_eq!(min_corners_at_size(p, s, l).unwrap().value, 0);
        }
        let eight = min_corners_at_size(p, 8, l).unwrap();
        assert_eq!(eight.value, 2);
        assert_eq!(count_corners(&eight.witness), 2);
        assert_eq!(min_corners_at_size(p, 9, l).unwrap().value, 5);
    }

    #[test]
    fn min_corners_methods_agree() {
        for (n, k) in [(3, 2), (4, 2), (2, 3), (5, 1), (2, 4)] {
            let p = g(n, k);
            for s in 0..=p.cells() {
                let a = min_corners_with(p, s, Limits::default(), MinCornersMethod::Exhaustive).unwrap();
                let b = min_corners_with(p, s, Limits::default(), MinCornersMethod::BranchAndBound).unwrap();
                assert_eq!(a.value, b.value, "n={n} k={k} s={s}");
                assert!(b.exact);
                assert_eq!(count_corners(&b.witness), b.value as u128);
                assert_eq!(b.witness.len(), s);
            }
        }
    }

    #[test]
    fn subadditive_examples() {
        assert_eq!(subadditive_upper(4, 2, 2, 3).unwrap(), 12);
        assert_eq!(subadditive_upper(6, 3, 2, 7).unwrap(), 28);
        assert_eq!(subadditive_upper(6, 2, 2, 4).unwrap(), 36);
        assert!(subadditive_upper(3, 3, 2, 7).is_err());
        assert!(subadditive_upper(3, 0, 2, 7).is_err());
    }

    #[test]
    fn table_merge_rules() {
        let mut t = ExtremalTable::new();
        let exact = exact_c(g(3, 2), Limits::default()).unwrap();
        let bounded = exact_c(g(3, 2), Limits::with_nodes(1)).unwrap();
        assert_eq!(t.insert(bounded.clone()).unwrap(), Merge::Inserted);
        assert_eq!(t.insert(exact.clone()).unwrap(), Merge::Replaced);
        assert_eq!(t.insert(bounded).unwrap(), Merge::Kept);
        assert_eq!(t.exact_value(2, 3), Some(7));
        let mut wrong = exact;
        wrong.upper = 6;
        assert!(t.insert(wrong).is_err());
    }

    #[test]
    fn subadditivity_report() {
        let mut t = ExtremalTable::new();
        for n in 1..=4 {
            t.insert(exact_c(g(n, 2), Limits::default()).unwrap()).unwrap();
        }
        let r = check_subadditivity(&t, 2);
        assert_eq!(r.pairs_checked, 6);
        assert!(r.passed(), "{r:?}");
        assert_eq!(t.subadditive_bound(2, 6), Some((27, 2)));
        assert!(check_subadditivity(&t, 3).pairs_checked == 0);
    }
}
