//! Exact number of corner-free subsets of `[n]^k`.
//!
//! The pruned counter decides cells in canonical order, include or exclude.
//! After cell `p` is decided, the only information about the past that
//! matters for the future is the set of corners whose past part is fully
//! included: their future parts may not be completely included. Singleton
//! future parts are kept as a *blocked* mask, larger ones as residual
//! constraints (reduced to an antichain). That state is the memo key.
//!
//! Counts are exact. When the node budget runs out the record is flagged
//! incomplete and its count is the sum over fully counted branches, a
//! lower bound.

use alloc::vec::Vec;
use alloc::{format, vec};

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::extremal::ExtremalTable;
use crate::grid::{CornerMasks, GridParams};
use crate::{Error, Limits, Result};

/// Largest grid the subset-enumeration oracle accepts.
pub const ORACLE_MAX_CELLS: usize = 25;

/// Largest grid the pruned counter accepts (counts stay below `2^127`).
pub const PRUNED_MAX_CELLS: usize = 127;

/// Memo entries kept per counter before further insertions are skipped.
pub const MEMO_CAPACITY: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusMethod {
    Oracle,
    Pruned,
}

impl CensusMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CensusMethod::Oracle => "oracle",
            CensusMethod::Pruned => "pruned",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub k: usize,
    pub n: usize,
    /// Exact count when `complete`, otherwise a lower bound.
    pub count: BigUint,
    pub complete: bool,
    pub method: CensusMethod,
}

impl CensusRecord {
    pub fn log2_count(&self) -> f64 {
        log2_big(&self.count)
    }

    /// `log2(count) / c`, for the extremal value `c = c_k(n)`.
    pub fn ratio(&self, c: usize) -> Option<f64> {
        (c > 0).then(|| self.log2_count() / c as f64)
    }
}

fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        libm::log2(x.to_f64().unwrap_or(f64::INFINITY))
    } else {
        let shift = bits - 64;
        let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
        libm::log2(top) + shift as f64
    }
}

/// Counts by testing all `2^{n^k}` subsets against every corner.
pub fn count_corner_free_oracle(params: GridParams) -> Result<CensusRecord> {
    if params.cells() > ORACLE_MAX_CELLS {
        return Err(Error::TooLarge { what: "cell count for the census oracle", limit: ORACLE_MAX_CELLS });
    }
    let masks: Vec<u32> = CornerMasks::new(params)?.masks.iter().map(|&m| m as u32).collect();
    let mut count = 0u64;
    for set in 0u32..(1u32 << params.cells()) {
        if masks.iter().all(|&m| m & set != m) {
            count += 1;
        }
    }
    Ok(CensusRecord { k: params.k(), n: params.n(), count: count.into(), complete: true, method: CensusMethod::Oracle })
}

/// Counts with the memoized recursion; incomplete if the node budget runs out.
pub fn count_corner_free(params: GridParams, limits: Limits) -> Result<CensusRecord> {
    let root = CensusBranch::root(params)?;
    let part = count_branch(&root, limits)?;
    Ok(combine(params, &[part]))
}

/// Undecided-suffix state of the pruned counter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CensusBranch {
    params: GridParams,
    pos: usize,
    blocked: u128,
    residual: Vec<u128>,
}

/// Count for one branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchCount {
    pub count: u128,
    pub complete: bool,
    pub nodes: u64,
}

impl CensusBranch {
    pub fn root(params: GridParams) -> Result<Self> {
        if params.cells() > PRUNED_MAX_CELLS {
            return Err(Error::TooLarge { what: "cell count for the census counter", limit: PRUNED_MAX_CELLS });
        }
        Ok(CensusBranch { params, pos: 0, blocked: 0, residual: Vec::new() })
    }

    pub fn params(&self) -> GridParams {
        self.params
    }

    /// Number of decided cells.
    pub fn depth(&self) -> usize {
        self.pos
    }
}

/// All feasible assignments of the first `depth` cells, in include-last
/// order. The counts of these branches sum to the full count.
pub fn split_branches(params: GridParams, depth: usize) -> Result<Vec<CensusBranch>> {
    let root = CensusBranch::root(params)?;
    let starting = starting_corners(params)?;
    let depth = depth.min(params.cells());
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(b) = stack.pop() {
        if b.pos == depth {
            out.push(b);
            continue;
        }
        let (ex, inc) = step(&starting, b.pos, b.blocked, &b.residual);
        if let Some((blocked, residual)) = inc {
            stack.push(CensusBranch { params, pos: b.pos + 1, blocked, residual });
        }
        stack.push(CensusBranch { params, pos: b.pos + 1, blocked: ex.0, residual: ex.1 });
    }
    Ok(out)
}

pub fn count_branch(branch: &CensusBranch, limits: Limits) -> Result<BranchCount> {
    let mut c = Counter {
        cells: branch.params.cells(),
        starting: starting_corners(branch.params)?,
        memo: HashMap::new(),
        nodes: 0,
        budget: limits.max_nodes,
    };
    let (count, complete) = c.count(branch.pos, branch.blocked, &branch.residual);
    Ok(BranchCount { count, complete, nodes: c.nodes })
}

/// Sums branch counts into a record. Integer addition keeps the result
/// independent of the order in which branches were counted.
pub fn combine(params: GridParams, parts: &[BranchCount]) -> CensusRecord {
    let total: u128 = parts.iter().map(|p| p.count).sum();
    CensusRecord {
        k: params.k(),
        n: params.n(),
        count: total.into(),
        complete: parts.iter().all(|p| p.complete),
        method: CensusMethod::Pruned,
    }
}

/// Corner masks grouped by their smallest cell (the apex).
fn starting_corners(params: GridParams) -> Result<Vec<Vec<u128>>> {
    if params.cells() > PRUNED_MAX_CELLS {
        return Err(Error::TooLarge { what: "cell count for the census counter", limit: PRUNED_MAX_CELLS });
    }
    let cm = CornerMasks::new(params)?;
    let mut starting = vec![Vec::new(); params.cells()];
    for &m in &cm.masks {
        starting[m.trailing_zeros() as usize].push(m);
    }
    Ok(starting)
}

type State = (u128, Vec<u128>);

/// Successor states for excluding and (if allowed) including cell `p`.
fn step(starting: &[Vec<u128>], p: usize, blocked: u128, res: &[u128]) -> (State, Option<State>) {
    let bit = 1u128 << p;
    let exclude = (blocked & !bit, res.iter().copied().filter(|r| r & bit == 0).collect());
    if blocked & bit != 0 {
        return (exclude, None);
    }
    let mut nb = blocked;
    let mut nr = Vec::with_capacity(res.len() + starting[p].len());
    for &r in res.iter().chain(&starting[p]) {
        if r & bit == 0 {
            nr.push(r);
            continue;
        }
        let rest = r & !bit;
        if rest.count_ones() == 1 {
            nb |= rest;
        } else {
            nr.push(rest);
        }
    }
    normalize(&mut nr, nb);
    (exclude, Some((nb, nr)))
}

/// Drops constraints already met by a blocked cell and those implied by a
/// smaller one, then sorts.
fn normalize(res: &mut Vec<u128>, blocked: u128) {
    res.retain(|r| r & blocked == 0);
    res.sort_unstable_by_key(|r| (r.count_ones(), *r));
    let mut kept: Vec<u128> = Vec::with_capacity(res.len());
    for &r in res.iter() {
        if !kept.iter().any(|&s| s & r == s) {
            kept.push(r);
        }
    }
    kept.sort_unstable();
    *res = kept;
}

struct Counter {
    cells: usize,
    starting: Vec<Vec<u128>>,
    memo: HashMap<Vec<u128>, u128>,
    nodes: u64,
    budget: u64,
}

impl Counter {
    fn count(&mut self, p: usize, blocked: u128, res: &[u128]) -> (u128, bool) {
        if p == self.cells {
            return (1, true);
        }
        let mut key = Vec::with_capacity(res.len() + 2);
        key.push(p as u128);
        key.push(blocked);
        key.extend_from_slice(res);
        if let Some(&v) = self.memo.get(&key) {
            return (v, true);
        }
        if self.nodes >= self.budget {
            return (0, false);
        }
        self.nodes += 1;
        let (ex, inc) = step(&self.starting, p, blocked, res);
        let (mut total, mut complete) = self.count(p + 1, ex.0, &ex.1);
        if let Some((nb, nr)) = inc {
            let (c, done) = self.count(p + 1, nb, &nr);
            total += c;
            complete &= done;
        }
        if complete && self.memo.len() < MEMO_CAPACITY {
            self.memo.insert(key, total);
        }
        (total, complete)
    }
}

/// One line of a ratio series.
#[derive(Clone, Debug, PartialEq)]
pub enum RatioEntry {
    Row { n: usize, log2_count: f64, c: usize, ratio: f64 },
    /// No exact census or no exact `c_k(n)` for this `n`.
    Gap { n: usize, missing: &'static str },
}

/// `log2(count)/c_k(n)` for each requested `n`. These are finite-size
/// numbers only; they say nothing about the limit behaviour.
pub fn census_ratio_series(
    k: usize,
    n_list: &[usize],
    census: &[CensusRecord],
    table: &ExtremalTable,
) -> Vec<RatioEntry> {
    n_list
        .iter()
        .map(|&n| {
            let rec = census.iter().find(|r| r.k == k && r.n == n && r.complete);
            match (rec, table.exact_value(k, n)) {
                (None, _) => RatioEntry::Gap { n, missing: "census" },
                (_, None) => RatioEntry::Gap { n, missing: "c_k" },
                (Some(r), Some(c)) => RatioEntry::Row {
                    n,
                    log2_count: r.log2_count(),
                    c,
                    ratio: r.ratio(c).expect("c_k(n) ≥ 1"),
                },
            }
        })
        .collect()
}

/// `2^{N} − 2^{N−(k+1)}` with `N = n^k`: the count when the grid has exactly one corner.
pub fn single_corner_count(params: GridParams) -> Result<BigUint> {
    if params.corner_total() != 1 {
        return Err(Error::InvalidArgument(format!(
            "[{}]^{} has {} corners, not exactly one",
            params.n(),
            params.k(),
            params.corner_total()
        )));
    }
    let n = params.cells() as u64;
    let one = BigUint::from(1u32);
    Ok((&one << n) - (one << (n - params.k() as u64 - 1)))
}
