//! Supersaturation: sets above the extremal size contain many corners.
//!
//! * [`greedy_corner_witnesses`] extracts `|A| − c_k(n)` distinct corners
//!   by repeatedly deleting a cell of some corner.
//! * [`check_double_counting`] evaluates `Γ_k(A) ≥ (|A|/2c)^{k+1} · c` and
//!   the exact double-counting identity behind it.
//! * [`build_grid_family`] and [`audit_prime_grid_family`] materialise the
//!   family of `M × … × M` subgrids with prime spacing `d ≤ x` and evaluate
//!   every inequality of the resulting superlinear lower bound, flagging
//!   which hypotheses hold at the given size.
//! * [`supersaturation_target`] compares `Γ_k(A)` with `Υ(n)·n^k`.
//!
//! Divisor counts use base-2 logarithms; prime counting bounds use natural
//! logarithms.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::BigUint;

use crate::extremal::ExtremalTable;
use crate::grid::{
    count_corners, find_corner, subset_corner_sum, subset_corner_sum_exhaustive, Corner, CornerMasks, GridParams,
    GridSet, EXHAUSTIVE_SUBSET_LIMIT,
};
use crate::primes::{primes_up_to, PNT_LOWER_VALID_FROM};
use crate::rates::{RateFunctions, RateValues};
use crate::{Error, Result};

/// Finds corners of `a` greedily: take the first corner of the current set,
/// record it, delete its cell lying in the most remaining corners (ties to
/// the lowest cell), repeat until corner-free.
///
/// Every recorded corner contains the cell deleted at its step, so the
/// corners are pairwise distinct; the loop runs at least `|A| − c_k(n)`
/// times because the final set is corner-free.
pub fn greedy_corner_witnesses(a: &GridSet) -> Vec<Corner> {
    let params = *a.params();
    let mut cur = a.clone();
    let mut out = Vec::new();
    while let Some(corner) = find_corner(&cur) {
        let victim = corner
            .cells(&params)
            .map(|cell| {
                let deg = params.corners_through(cell).into_iter().filter(|&c| cur.contains_corner(c)).count();
                (core::cmp::Reverse(deg), cell)
            })
            .min()
            .map(|(_, cell)| cell)
            .expect("corner has cells");
        cur.remove_cell(victim);
        out.push(corner);
    }
    out
}

/// Exact identity `Σ_{S ⊆ A, |S| = s} Γ(S) = Γ(A)·C(|A|−k−1, s−k−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub s: usize,
    pub closed_form: BigUint,
    /// Direct sum over all `s`-subsets, when `|A|` is small enough.
    pub exhaustive: Option<BigUint>,
}

impl IdentityCheck {
    pub fn holds(&self) -> Option<bool> {
        self.exhaustive.as_ref().map(|e| *e == self.closed_form)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleCountingCheck {
    pub gamma: u128,
    /// `(|A|/(2c))^{k+1} · c`.
    pub bound: f64,
    /// `|A| ≥ 2c`; below that the bound is vacuous.
    pub preconditions_met: bool,
    pub holds: bool,
    pub identity: IdentityCheck,
}

pub fn double_counting_identity(a: &GridSet, s: usize) -> Result<IdentityCheck> {
    let closed_form = subset_corner_sum(a, s)?;
    let exhaustive = if a.len() <= EXHAUSTIVE_SUBSET_LIMIT { Some(subset_corner_sum_exhaustive(a, s)?) } else { None };
    Ok(IdentityCheck { s, closed_form, exhaustive })
}

/// Evaluates the double-counting lower bound for `a` against the extremal
/// value `ck`. The identity is checked at `s = min(2·ck, |A|)`.
pub fn check_double_counting(a: &GridSet, ck: usize) -> Result<DoubleCountingCheck> {
    if ck == 0 {
        return Err(Error::InvalidArgument("c_k(n) must be positive".into()));
    }
    let k = a.params().k() as f64;
    let gamma = count_corners(a);
    let bound = libm::pow(a.len() as f64 / (2.0 * ck as f64), k + 1.0) * ck as f64;
    let identity = double_counting_identity(a, (2 * ck).min(a.len()))?;
    Ok(DoubleCountingCheck {
        gamma,
        bound,
        preconditions_met: a.len() >= 2 * ck,
        holds: gamma as f64 >= bound,
        identity,
    })
}

/// Subgrid side `M`, prime cutoff `x` and density constant `K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupersatConfig {
    pub side: usize,
    pub prime_cutoff: f64,
    pub density: f64,
}

impl SupersatConfig {
    pub fn new(side: usize, prime_cutoff: f64, density: f64) -> Result<Self> {
        if side < 2 {
            return Err(Error::InvalidArgument(format!("subgrid side M = {side} must be at least 2")));
        }
        if !(prime_cutoff >= 0.0) {
            return Err(Error::InvalidArgument(format!("prime cutoff x = {prime_cutoff} must be non-negative")));
        }
        if !(density >= 2.0) {
            return Err(Error::InvalidArgument(format!("density constant K = {density} must be at least 2")));
        }
        Ok(SupersatConfig { side, prime_cutoff, density })
    }
}

/// Largest number of subgrids a family may hold.
pub const MAX_FAMILY_SIZE: usize = 10_000_000;

/// Subgrids with spacing `d` and the central region `ζ_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeLayer {
    pub d: usize,
    /// Base cells (the coordinate-wise minimum point) of the members of `G_d`.
    pub bases: Vec<usize>,
    /// `ζ_d = [lo, hi]^k` in 1-based coordinates; `None` when empty.
    pub zeta: Option<(usize, usize)>,
    /// `|A ∩ G|` per member, aligned with `bases`.
    pub sizes: Vec<usize>,
    /// `Γ_k(A ∩ G)` per member, aligned with `bases`.
    pub corners: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridFamily {
    pub params: GridParams,
    pub config: SupersatConfig,
    /// `c_k(M)`.
    pub ck_side: usize,
    pub layers: Vec<PrimeLayer>,
    /// Members with `|A ∩ G| ≥ K·c_k(M)`, as `(layer, member)` indices.
    pub dense: Vec<(usize, usize)>,
}

impl GridFamily {
    pub fn len(&self) -> usize {
        self.layers.iter().map(|l| l.bases.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cells of the member of layer `d` with base `base`, in index order.
    pub fn member_cells(&self, d: usize, base: usize) -> Vec<usize> {
        subgrid_cells(&self.params, self.config.side, d, base)
    }

    /// Number of members of `G_d` containing each cell.
    pub fn coverage(&self, layer: usize) -> Vec<usize> {
        let l = &self.layers[layer];
        let mut cover = vec![0usize; self.params.cells()];
        for &b in &l.bases {
            for c in self.member_cells(l.d, b) {
                cover[c] += 1;
            }
        }
        cover
    }

    /// Cells of `ζ_d` for one layer.
    pub fn zeta_cells(&self, layer: usize) -> Vec<usize> {
        let Some((lo, hi)) = self.layers[layer].zeta else { return Vec::new() };
        let mut c = vec![0usize; self.params.k()];
        (0..self.params.cells())
            .filter(|&cell| {
                self.params.coords0(cell, &mut c);
                c.iter().all(|&x| x + 1 >= lo && x < hi)
            })
            .collect()
    }

    /// `Ok` when every cell of every `ζ_d` lies in exactly `M^k` members of
    /// `G_d`; otherwise the first `(d, cell, multiplicity)` that does not.
    pub fn check_zeta_multiplicity(&self) -> core::result::Result<(), (usize, usize, usize)> {
        let expected = self.config.side.pow(self.params.k() as u32);
        for (i, l) in self.layers.iter().enumerate() {
            let cover = self.coverage(i);
            for z in self.zeta_cells(i) {
                if cover[z] != expected {
                    return Err((l.d, z, cover[z]));
                }
            }
        }
        Ok(())
    }
}

fn subgrid_cells(params: &GridParams, side: usize, d: usize, base: usize) -> Vec<usize> {
    let k = params.k();
    let mut out = Vec::with_capacity(side.pow(k as u32));
    let mut idx = vec![0usize; k];
    loop {
        let cell = base + idx.iter().enumerate().map(|(axis, &j)| j * d * params.stride(axis)).sum::<usize>();
        out.push(cell);
        let mut axis = 0;
        loop {
            if axis == k {
                return out;
            }
            idx[axis] += 1;
            if idx[axis] < side {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
}

/// Builds the family using `c_k(M)` from the table.
pub fn build_grid_family(a: &GridSet, cfg: SupersatConfig, table: &ExtremalTable) -> Result<GridFamily> {
    let k = a.params().k();
    let ck = table.exact_value(k, cfg.side).ok_or(Error::TableMiss { k, n: cfg.side })?;
    build_grid_family_with(a, cfg, ck)
}

/// Builds the family with a caller-supplied `c_k(M)`.
pub fn build_grid_family_with(a: &GridSet, cfg: SupersatConfig, ck_side: usize) -> Result<GridFamily> {
    let params = *a.params();
    let (n, k, m) = (params.n(), params.k(), cfg.side);
    let inner = GridParams::new(m, k)?;
    let inner_masks = CornerMasks::new(inner)?;
    let primes = primes_up_to(cfg.prime_cutoff);
    let mut total = 0usize;
    for &d in &primes {
        let span = n.saturating_sub((m - 1) * d);
        total = total.saturating_add(span.checked_pow(k as u32).unwrap_or(usize::MAX));
    }
    if total > MAX_FAMILY_SIZE {
        return Err(Error::TooLarge { what: "subgrid family", limit: MAX_FAMILY_SIZE });
    }
    let threshold = cfg.density * ck_side as f64;
    let mut layers = Vec::with_capacity(primes.len());
    let mut dense = Vec::new();
    for &d in &primes {
        let span = n.saturating_sub((m - 1) * d);
        let mut layer = PrimeLayer { d, bases: Vec::new(), zeta: None, sizes: Vec::new(), corners: Vec::new() };
        let lo = (m - 1) * d + 1;
        if n >= (m - 1) * d && lo <= n - (m - 1) * d {
            layer.zeta = Some((lo, n - (m - 1) * d));
        }
        if span > 0 {
            let origins = GridParams::new(span, k)?;
            let mut c = vec![0usize; k];
            for o in 0..origins.cells() {
                origins.coords0(o, &mut c);
                let base: usize = c.iter().enumerate().map(|(axis, &x)| x * params.stride(axis)).sum();
                let cells = subgrid_cells(&params, m, d, base);
                let local: u128 = cells
                    .iter()
                    .enumerate()
                    .filter(|(_, &cell)| a.contains_cell(cell))
                    .fold(0, |acc, (i, _)| acc | 1 << i);
                let size = local.count_ones() as usize;
                if size as f64 >= threshold {
                    dense.push((layers.len(), layer.bases.len()));
                }
                layer.bases.push(base);
                layer.sizes.push(size);
                layer.corners.push(inner_masks.count_in(local) as u64);
            }
        }
        layers.push(layer);
    }
    Ok(GridFamily { params, config: cfg, ck_side, layers, dense })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "==",
        }
    }

    /// Comparison with relative slack `1e-12` for floating-point rounding.
    pub fn check(self, lhs: f64, rhs: f64) -> bool {
        let slack = 1e-12 * lhs.abs().max(rhs.abs()).max(1.0);
        match self {
            Relation::Ge => lhs >= rhs - slack,
            Relation::Le => lhs <= rhs + slack,
            Relation::Eq => (lhs - rhs).abs() <= slack,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditEntry {
    /// Name of the step in the chain of inequalities, or of a supporting fact.
    pub label: &'static str,
    pub description: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// Whether the hypotheses needed for this step hold at this instance.
    /// Structural steps always have this set.
    pub preconditions_met: bool,
    pub holds: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub config: SupersatConfig,
    pub ck_side: usize,
    /// `x_A = |A| / (2^{k+1} M n^{k−1})`, the largest cutoff the argument allows.
    pub x_a: f64,
    pub family_size: usize,
    pub dense_size: usize,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn entry(&self, label: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// Entries whose hypotheses hold but whose inequality fails.
    pub fn violations(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.preconditions_met && !e.holds)
    }
}

/// Builds the family and audits every step of the superlinear lower bound on `Γ_k(A)`.
pub fn audit_prime_grid_family(a: &GridSet, cfg: SupersatConfig, table: &ExtremalTable) -> Result<AuditReport> {
    let family = build_grid_family(a, cfg, table)?;
    Ok(audit_family(a, &family))
}

/// Audits an already built family for the same set `a`.
pub fn audit_family(a: &GridSet, family: &GridFamily) -> AuditReport {
    let params = family.params;
    let cfg = family.config;
    let (n, k, m) = (params.n() as f64, params.k() as i32, cfg.side as f64);
    let size = a.len() as f64;
    let x = cfg.prime_cutoff;
    let ck_m = family.ck_side as f64;
    let big_k = cfg.density;
    let mk = libm::pow(m, k as f64);
    let log2n = libm::log2(n);
    let gamma = count_corners(a) as f64;
    let x_a = size / (libm::pow(2.0, (k + 1) as f64) * m * libm::pow(n, (k - 1) as f64));
    let x_over_ln = if x > 1.0 { x / libm::log(x) } else { f64::NAN };

    let sum_gamma: f64 = family.layers.iter().flat_map(|l| &l.corners).map(|&c| c as f64).sum();
    let sum_sizes: f64 = family.layers.iter().flat_map(|l| &l.sizes).map(|&s| s as f64).sum();
    let family_size = family.len() as f64;
    let dense_size = family.dense.len() as f64;
    let zeta_counts: Vec<f64> = (0..family.layers.len())
        .map(|i| family.zeta_cells(i).iter().filter(|&&z| a.contains_cell(z)).count() as f64)
        .collect();
    let sum_zeta: f64 = zeta_counts.iter().sum();
    let dense_bound = libm::pow(big_k / 2.0, (k + 1) as f64) * ck_m;

    let pnt_window = x >= PNT_LOWER_VALID_FROM;
    let within_cutoff = x <= x_a;
    let dense_enough = size / libm::pow(n, k as f64) >= 8.0 * big_k * ck_m / mk;
    let x_positive = x > 1.0;

    let mut entries = Vec::new();
    let mut push = |label, description, lhs: f64, rhs: f64, relation: Relation, pre: bool, note: String| {
        entries.push(AuditEntry { label, description, lhs, rhs, relation, preconditions_met: pre, holds: relation.check(lhs, rhs), note });
    };

    let per_corner = if sum_gamma == 0.0 { 0.0 } else { sum_gamma / (mk * log2n) };
    push(
        "averaging",
        "Γ(A) ≥ Σ_G Γ(A∩G) / (M^k log2 n)",
        gamma,
        per_corner,
        Relation::Ge,
        true,
        String::new(),
    );
    push(
        "multiplicity",
        "Σ_G Γ(A∩G) ≤ Γ(A)·(M−1)^k·log2 n",
        sum_gamma,
        gamma * libm::pow(m - 1.0, k as f64) * log2n,
        Relation::Le,
        true,
        String::new(),
    );

    let min_dense = family
        .dense
        .iter()
        .map(|&(l, i)| family.layers[l].corners[i] as f64)
        .fold(f64::INFINITY, f64::min);
    push(
        "dense-subgrid",
        "Γ(A∩G) ≥ (K/2)^{k+1} c_k(M) for every dense G",
        if family.dense.is_empty() { f64::NAN } else { min_dense },
        dense_bound,
        Relation::Ge,
        !family.dense.is_empty(),
        if family.dense.is_empty() { "no dense subgrid".into() } else { format!("minimum over {} dense subgrids", family.dense.len()) },
    );
    let rhs3 = if dense_size == 0.0 { 0.0 } else { dense_size * dense_bound / (mk * log2n) };
    push(
        "dense-total",
        "Γ(A) ≥ |R|·(K/2)^{k+1} c_k(M) / (M^k log2 n)",
        gamma,
        rhs3,
        Relation::Ge,
        true,
        String::new(),
    );

    let boundary_slack = family
        .layers
        .iter()
        .zip(&zeta_counts)
        .map(|(l, &z)| z - (size - libm::pow(2.0, k as f64) * m * l.d as f64 * libm::pow(n, (k - 1) as f64)))
        .fold(f64::INFINITY, f64::min);
    push(
        "zeta-boundary",
        "|A∩ζ_d| ≥ |A| − 2^k M d n^{k−1} for every prime d ≤ x",
        if family.layers.is_empty() { 0.0 } else { boundary_slack },
        0.0,
        Relation::Ge,
        true,
        "reported as the minimum slack over d".into(),
    );
    let min_zeta = zeta_counts.iter().copied().fold(f64::INFINITY, f64::min);
    push(
        "zeta-density",
        "|A∩ζ_d| ≥ |A|/2 for every prime d ≤ x",
        if family.layers.is_empty() { f64::NAN } else { min_zeta },
        size / 2.0,
        Relation::Ge,
        within_cutoff && !family.layers.is_empty(),
        format!("needs x ≤ x_A = {x_a:.6}"),
    );
    let zeta_mult = family.check_zeta_multiplicity();
    push(
        "zeta-multiplicity",
        "every z ∈ ζ_d lies in exactly M^k members of G_d",
        match zeta_mult {
            Ok(()) => mk,
            Err((_, _, c)) => c as f64,
        },
        mk,
        Relation::Eq,
        true,
        match zeta_mult {
            Ok(()) => String::new(),
            Err((d, z, c)) => format!("d = {d}, cell {z} lies in {c} members"),
        },
    );

    push(
        "coverage",
        "Σ_G |A∩G| ≥ M^k Σ_d |A∩ζ_d|",
        sum_sizes,
        mk * sum_zeta,
        Relation::Ge,
        true,
        String::new(),
    );
    push(
        "coverage-primes",
        "Σ_G |A∩G| ≥ M^k·(x/ln x)·|A|/2",
        sum_sizes,
        mk * x_over_ln * size / 2.0,
        Relation::Ge,
        pnt_window && within_cutoff,
        format!("needs x ≥ {PNT_LOWER_VALID_FROM} and x ≤ x_A = {x_a:.6}"),
    );
    push(
        "family-size",
        "|G| ≤ (2x/ln x)·n^k",
        family_size,
        2.0 * x_over_ln * libm::pow(n, k as f64),
        Relation::Le,
        x_positive,
        "needs x > 1".into(),
    );
    push(
        "dense-split",
        "Σ_G |A∩G| ≤ M^k|R| + K c_k(M)·(2x/ln x)·n^k",
        sum_sizes,
        mk * dense_size + big_k * ck_m * 2.0 * x_over_ln * libm::pow(n, k as f64),
        Relation::Le,
        x_positive,
        "needs x > 1".into(),
    );
    push(
        "dense-count",
        "|R| ≥ (x/ln x)·|A|/4",
        dense_size,
        x_over_ln * size / 4.0,
        Relation::Ge,
        pnt_window && within_cutoff && dense_enough,
        format!("needs x ≥ {PNT_LOWER_VALID_FROM}, x ≤ x_A and |A|/n^k ≥ 8K c_k(M)/M^k"),
    );
    let conclusion = size * size / libm::pow(2.0, (2 * k + 4) as f64) * libm::pow(big_k, (k + 1) as f64) * ck_m
        / (libm::pow(m, (k + 1) as f64) * libm::pow(n, (k - 1) as f64) * log2n * log2n);
    push(
        "conclusion",
        "Γ(A) ≥ |A|²/2^{2k+4} · K^{k+1} c_k(M) / (M^{k+1} n^{k−1} log2² n)",
        gamma,
        conclusion,
        Relation::Ge,
        pnt_window && within_cutoff && dense_enough,
        "the argument takes x = x_A".into(),
    );

    AuditReport {
        n: params.n(),
        k: params.k(),
        size: a.len(),
        config: cfg,
        ck_side: family.ck_side,
        x_a,
        family_size: family.len(),
        dense_size: family.dense.len(),
        entries,
    }
}

/// Comparison of `Γ_k(A)` with `Υ(n)·n^k`.
///
/// The target is an asymptotic statement about sets of size at least
/// `C′·c_k(n)` along a sparse sequence of `n`; a negative margin at a fixed
/// `n` does not refute it.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetReport {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub c: usize,
    pub gamma: u128,
    pub rates: RateValues,
    /// `Υ(n)·n^k`.
    pub target: f64,
    /// `Γ_k(A) − Υ(n)·n^k`.
    pub margin: f64,
    /// `C′·c_k(n)`.
    pub size_threshold: f64,
    pub meets_size_threshold: bool,
    /// `Υ·n·Ψ^k / log n`, which equals 1 up to rounding.
    pub identity_ratio: f64,
}

pub fn supersaturation_target(a: &GridSet, rf: &RateFunctions) -> Result<TargetReport> {
    let params = a.params();
    if params.k() != rf.k {
        return Err(Error::InvalidArgument(format!("set has k = {}, rate functions have k = {}", params.k(), rf.k)));
    }
    let n = params.n();
    let c = rf.c(n)?;
    let rates = rf.eval(n)?;
    let gamma = count_corners(a);
    let target = rates.upsilon * libm::pow(n as f64, params.k() as f64);
    let size_threshold = rf.c_prime * c as f64;
    Ok(TargetReport {
        n,
        k: params.k(),
        size: a.len(),
        c,
        gamma,
        rates,
        target,
        margin: gamma as f64 - target,
        size_threshold,
        meets_size_threshold: a.len() as f64 >= size_threshold,
        identity_ratio: rates.identity_ratio(params.k()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::exact_c;
    use crate::Limits;

    fn g(n: usize, k: usize) -> GridParams {
        GridParams::new(n, k).unwrap()
    }

    fn table(k: usize, upto: usize) -> ExtremalTable {
        let mut t = ExtremalTable::new();
        for n in 1..=upto {
            t.insert(exact_c(g(n, k), Limits::default()).unwrap()).unwrap();
        }
        t
    }

    #[test]
    fn greedy_examples() {
        assert!(greedy_corner_witnesses(&GridSet::empty(g(3, 2))).is_empty());
        let w = greedy_corner_witnesses(&GridSet::full(g(3, 2)));
        assert_eq!(w.len(), 2);
        assert_ne!(w[0], w[1]);
        assert_eq!(greedy_corner_witnesses(&GridSet::full(g(2, 2))).len(), 1);
    }

    #[test]
    fn double_counting_small() {
        let r = check_double_counting(&GridSet::full(g(3, 2)), 7).unwrap();
        assert!(!r.preconditions_met);
        assert_eq!(r.gamma, 5);
        assert!(!check_double_counting(&GridSet::full(g(2, 2)), 3).unwrap().preconditions_met);
        let id = double_counting_identity(&GridSet::full(g(3, 2)), 5).unwrap();
        assert_eq!(id.closed_form, 75u32.into());
        assert_eq!(id.holds(), Some(true));
        // k = 1: c_1(5) = 1, Γ = 4+3+2+1 = 10 ≥ (5/2)^2
        let r = check_double_counting(&GridSet::full(g(5, 1)), 1).unwrap();
        assert!(r.preconditions_met && r.holds);
        assert_eq!(r.gamma, 10);
        assert!((r.bound - 6.25).abs() < 1e-12);
    }

    #[test]
    fn family_sizes() {
        let a = GridSet::full(g(5, 2));
        let cfg = SupersatConfig::new(2, 2.0, 2.0).unwrap();
        let f = build_grid_family_with(&a, cfg, 3).unwrap();
        assert_eq!(f.layers.len(), 1);
        assert_eq!(f.layers[0].bases.len(), 9);
        // each member of the full grid is a full [2]^2 with one corner
        assert!(f.layers[0].corners.iter().all(|&c| c == 1));
        let cfg = SupersatConfig::new(2, 1.0, 2.0).unwrap();
        assert!(build_grid_family_with(&GridSet::full(g(3, 2)), cfg, 3).unwrap().is_empty());
    }

    #[test]
    fn zeta_region() {
        let a = GridSet::full(g(10, 2));
        let f = build_grid_family_with(&a, SupersatConfig::new(3, 2.0, 2.0).unwrap(), 7).unwrap();
        assert_eq!(f.layers[0].zeta, Some((5, 6)));
        assert_eq!(f.zeta_cells(0).len(), 4);
        assert!(f.check_zeta_multiplicity().is_ok());
    }

    #[test]
    fn member_cells_are_spaced() {
        let p = g(7, 2);
        let cells = subgrid_cells(&p, 3, 2, 0);
        let pts: Vec<Vec<usize>> = cells.iter().map(|&c| p.point_of(c).coords).collect();
        assert_eq!(pts[0], vec![1, 1]);
        assert_eq!(pts[1], vec![3, 1]);
        assert_eq!(pts[3], vec![1, 3]);
        assert_eq!(pts[8], vec![5, 5]);
    }

    #[test]
    fn audit_structural_entries_hold() {
        let t = table(2, 3);
        let a = GridSet::full(g(5, 2));
        let r = audit_prime_grid_family(&a, SupersatConfig::new(2, 2.0, 2.0).unwrap(), &t).unwrap();
        for label in ["averaging", "multiplicity", "dense-total", "coverage", "zeta-boundary", "zeta-multiplicity"] {
            let e = r.entry(label).unwrap();
            assert!(e.preconditions_met && e.holds, "{e:?}");
        }
        assert_eq!(r.entry("multiplicity").unwrap().lhs, 9.0);
        assert_eq!(r.violations().count(), 0, "{:?}", r.violations().collect::<Vec<_>>());

        let empty = GridSet::empty(g(5, 2));
        let r = audit_prime_grid_family(&empty, SupersatConfig::new(2, 2.0, 2.0).unwrap(), &t).unwrap();
        let e = r.entry("averaging").unwrap();
        assert_eq!((e.lhs, e.rhs), (0.0, 0.0));
        assert!(e.holds);
    }

    #[test]
    fn audit_needs_table_entry() {
        let t = table(2, 2);
        let a = GridSet::full(g(5, 2));
        let r = audit_prime_grid_family(&a, SupersatConfig::new(3, 2.0, 2.0).unwrap(), &t);
        assert!(matches!(r, Err(Error::TableMiss { k: 2, n: 3 })));
    }

    #[test]
    fn target_report() {
        let rf = RateFunctions::from_values(2, [(2, 3), (3, 7)]);
        let a = GridSet::full(g(3, 2));
        let r = supersaturation_target(&a, &rf).unwrap();
        assert_eq!(r.gamma, 5);
        assert!((r.identity_ratio - 1.0).abs() < 1e-12);
        assert!(!r.meets_size_threshold);
        let witness = exact_c(g(3, 2), Limits::default()).unwrap().witness.unwrap();
        let r = supersaturation_target(&witness, &rf).unwrap();
        assert_eq!(r.gamma, 0);
        assert!(r.margin < 0.0);
        assert!(supersaturation_target(&GridSet::full(g(4, 2)), &rf).is_err());
    }
}
