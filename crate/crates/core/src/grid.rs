//! Grid data model: parameters, points, corners, subsets, and corner counting.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::Zero;

use crate::bitset::BitSet;
use crate::{Error, Result, MAX_KERNEL_CELLS};

/// Largest accepted dimension.
pub const MAX_DIM: usize = 64;

/// Largest `|A|` accepted by [`subset_corner_sum_exhaustive`].
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 20;

/// Side length `n` and dimension `k` of the grid `[n]^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridParams {
    n: usize,
    k: usize,
    cells: usize,
}

impl GridParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidGrid { n, k });
        }
        if k > MAX_DIM {
            return Err(Error::TooLarge { what: "dimension k", limit: MAX_DIM });
        }
        let cells = u32::try_from(k)
            .ok()
            .and_then(|k| n.checked_pow(k))
            .ok_or(Error::TooLarge { what: "cell count n^k", limit: usize::MAX })?;
        Ok(GridParams { n, k, cells })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// `n^k`.
    #[inline]
    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Index offset of a unit step along `axis` (0-based).
    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow(axis as u32)
    }

    /// Number of corners in the grid, `Σ_{d=1}^{n-1} (n-d)^k`.
    pub fn corner_total(&self) -> u128 {
        (1..self.n).map(|d| ((self.n - d) as u128).pow(self.k as u32)).sum()
    }

    /// Canonical index of a point.
    pub fn cell_of(&self, p: &Point) -> Result<usize> {
        if p.coords.len() != self.k {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.k,
                p.coords.len()
            )));
        }
        let mut idx = 0;
        for (axis, &c) in p.coords.iter().enumerate() {
            if c == 0 || c > self.n {
                return Err(Error::InvalidPoint(format!("coordinate {c} outside [1, {}]", self.n)));
            }
            idx += (c - 1) * self.stride(axis);
        }
        Ok(idx)
    }

    /// Point at a canonical index; panics if `cell >= n^k`.
    pub fn point_of(&self, cell: usize) -> Point {
        assert!(cell < self.cells, "cell {cell} out of range");
        let mut coords = Vec::with_capacity(self.k);
        let mut rest = cell;
        for _ in 0..self.k {
            coords.push(rest % self.n + 1);
            rest /= self.n;
        }
        Point { coords }
    }

    /// 0-based coordinates of `cell` written into `out[..k]`.
    #[inline]
    pub fn coords0(&self, cell: usize, out: &mut [usize]) {
        let mut rest = cell;
        for slot in out.iter_mut().take(self.k) {
            *slot = rest % self.n;
            rest /= self.n;
        }
    }

    /// All corners containing `cell`, in enumeration order.
    pub fn corners_through(&self, cell: usize) -> Vec<Corner> {
        let mut c = [0usize; MAX_DIM];
        self.coords0(cell, &mut c);
        let c = &c[..self.k];
        let mut out = Vec::new();
        for d in 1..self.n {
            // `cell` as the apex
            if c.iter().all(|&x| x + d < self.n) {
                out.push(Corner { apex: cell, diff: d });
            }
            // `cell` as the tip along `axis`
            for axis in 0..self.k {
                if c[axis] >= d
                    && c.iter().enumerate().all(|(j, &x)| j == axis || x + d < self.n)
                {
                    out.push(Corner { apex: cell - d * self.stride(axis), diff: d });
                }
            }
        }
        out.sort_unstable_by_key(|c| (c.diff, c.apex));
        out
    }
}

/// A point of `[n]^k` with 1-based coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub coords: Vec<usize>,
}

impl Point {
    pub fn new(coords: Vec<usize>) -> Self {
        Point { coords }
    }
}

impl From<&[usize]> for Point {
    fn from(c: &[usize]) -> Self {
        Point { coords: c.to_vec() }
    }
}

/// The corner `{a} ∪ {a + d·e_i}`, stored as the canonical index of its
/// apex and its difference `d ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub apex: usize,
    pub diff: usize,
}

impl Corner {
    /// Validated construction: every `apex_i + d ≤ n`.
    pub fn new(params: &GridParams, apex: &Point, diff: usize) -> Result<Self> {
        if diff == 0 {
            return Err(Error::InvalidArgument("corner difference must be positive".into()));
        }
        let cell = params.cell_of(apex)?;
        if apex.coords.iter().any(|&c| c + diff > params.n) {
            return Err(Error::InvalidArgument(format!(
                "corner with difference {diff} leaves the grid [{}]^{}",
                params.n, params.k
            )));
        }
        Ok(Corner { apex: cell, diff })
    }

    pub fn apex_point(&self, params: &GridParams) -> Point {
        params.point_of(self.apex)
    }

    /// Canonical indices of the `k + 1` points: apex first, then one per axis.
    pub fn cells(self, params: &GridParams) -> impl Iterator<Item = usize> + '_ {
        core::iter::once(self.apex)
            .chain((0..params.k).map(move |axis| self.apex + self.diff * params.stride(axis)))
    }

    pub fn points(self, params: &GridParams) -> Vec<Point> {
        self.cells(params).map(|c| params.point_of(c)).collect()
    }

    /// Bitmask of the corner's cells; requires `n^k ≤ 128`.
    pub fn mask(self, params: &GridParams) -> u128 {
        self.cells(params).fold(0u128, |m, c| m | 1u128 << c)
    }
}

/// Streams every corner of the grid: increasing `d`, then apex in canonical order.
pub fn enumerate_corners(params: GridParams) -> CornerIter {
    CornerIter::new(params)
}

pub struct CornerIter {
    params: GridParams,
    d: usize,
    coords: [usize; MAX_DIM],
    cell: usize,
    done: bool,
}

impl CornerIter {
    fn new(params: GridParams) -> Self {
        CornerIter { params, d: 1, coords: [0; MAX_DIM], cell: 0, done: params.n < 2 }
    }
}

impl Iterator for CornerIter {
    type Item = Corner;

    fn next(&mut self) -> Option<Corner> {
        if self.done {
            return None;
        }
        let out = Corner { apex: self.cell, diff: self.d };
        // apex coordinates range over [0, n - d)
        let bound = self.params.n - self.d;
        let mut axis = 0;
        loop {
            if axis == self.params.k {
                self.d += 1;
                self.cell = 0;
                self.done = self.d >= self.params.n;
                break;
            }
            let stride = self.params.stride(axis);
            self.coords[axis] += 1;
            self.cell += stride;
            if self.coords[axis] < bound {
                break;
            }
            self.cell -= bound * stride;
            self.coords[axis] = 0;
            axis += 1;
        }
        Some(out)
    }
}

/// A subset of `[n]^k` as a membership bitmap in canonical cell order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridSet {
    params: GridParams,
    bits: BitSet,
}

impl GridSet {
    pub fn empty(params: GridParams) -> Self {
        GridSet { params, bits: BitSet::new(params.cells) }
    }

    pub fn full(params: GridParams) -> Self {
        GridSet { params, bits: BitSet::full(params.cells) }
    }

    pub fn from_cells<I: IntoIterator<Item = usize>>(params: GridParams, cells: I) -> Result<Self> {
        let mut set = GridSet::empty(params);
        for c in cells {
            if c >= params.cells {
                return Err(Error::InvalidPoint(format!("cell index {c} out of range")));
            }
            set.bits.insert(c);
        }
        Ok(set)
    }

    pub fn from_points(params: GridParams, points: &[Point]) -> Result<Self> {
        let mut set = GridSet::empty(params);
        for p in points {
            set.bits.insert(params.cell_of(p)?);
        }
        Ok(set)
    }

    pub fn from_bits(params: GridParams, bits: BitSet) -> Result<Self> {
        if bits.len() != params.cells {
            return Err(Error::InvalidArgument(format!(
                "bitmap length {} does not match n^k = {}",
                bits.len(),
                params.cells
            )));
        }
        Ok(GridSet { params, bits })
    }

    /// Requires `n^k ≤ 128`.
    pub fn from_mask(params: GridParams, mask: u128) -> Self {
        GridSet { params, bits: BitSet::from_u128(params.cells, mask) }
    }

    pub fn params(&self) -> &GridParams {
        &self.params
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn mask(&self) -> Option<u128> {
        self.bits.to_u128()
    }

    /// Cardinality `|A|`.
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn contains_cell(&self, cell: usize) -> bool {
        self.bits.contains(cell)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.params.cell_of(p).map(|c| self.bits.contains(c)).unwrap_or(false)
    }

    pub fn insert_cell(&mut self, cell: usize) -> bool {
        self.bits.insert(cell)
    }

    pub fn remove_cell(&mut self, cell: usize) -> bool {
        self.bits.remove(cell)
    }

    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn points(&self) -> Vec<Point> {
        self.cells().map(|c| self.params.point_of(c)).collect()
    }

    pub fn is_subset(&self, other: &GridSet) -> bool {
        self.params == other.params && self.bits.is_subset(&other.bits)
    }

    #[inline]
    pub fn contains_corner(&self, corner: Corner) -> bool {
        corner.cells(&self.params).all(|c| self.bits.contains(c))
    }
}

/// `Γ_k(A)`: the number of corners whose points all lie in `A`.
pub fn count_corners(a: &GridSet) -> u128 {
    enumerate_corners(a.params)
        .filter(|c| a.bits.contains(c.apex) && a.contains_corner(*c))
        .count() as u128
}

/// First corner of `A` in enumeration order, if any.
pub fn find_corner(a: &GridSet) -> Option<Corner> {
    enumerate_corners(a.params).find(|c| a.bits.contains(c.apex) && a.contains_corner(*c))
}

pub fn is_corner_free(a: &GridSet) -> bool {
    find_corner(a).is_none()
}

/// `Σ_{S ⊆ A, |S| = s} Γ_k(S)` through the identity
/// `Γ_k(A) · C(|A| − (k+1), s − (k+1))`: a corner inside `A` lies in exactly
/// that many `s`-subsets.
pub fn subset_corner_sum(a: &GridSet, s: usize) -> Result<BigUint> {
    let size = a.len();
    if s > size {
        return Err(Error::InvalidArgument(format!("subset size {s} exceeds |A| = {size}")));
    }
    let r = a.params.k + 1;
    if s < r {
        return Ok(BigUint::zero());
    }
    let gamma = BigUint::from(count_corners(a));
    Ok(gamma * binomial(BigUint::from(size - r), BigUint::from(s - r)))
}

/// The same sum by direct enumeration of all `s`-subsets; `|A| ≤ 20`.
pub fn subset_corner_sum_exhaustive(a: &GridSet, s: usize) -> Result<BigUint> {
    let members: Vec<usize> = a.cells().collect();
    let size = members.len();
    if size > EXHAUSTIVE_SUBSET_LIMIT {
        return Err(Error::TooLarge { what: "|A| for exhaustive subset sums", limit: EXHAUSTIVE_SUBSET_LIMIT });
    }
    if s > size {
        return Err(Error::InvalidArgument(format!("subset size {s} exceeds |A| = {size}")));
    }
    // corners inside A, as masks over positions in `members`
    let local: Vec<u32> = enumerate_corners(a.params)
        .filter(|c| a.contains_corner(*c))
        .map(|c| {
            c.cells(&a.params)
                .map(|cell| 1u32 << members.binary_search(&cell).expect("corner cell in A"))
                .fold(0, |m, b| m | b)
        })
        .collect();
    let mut total: u64 = 0;
    for_each_k_subset(size, s, |sub| {
        total += local.iter().filter(|&&m| m & sub == m).count() as u64;
    });
    Ok(BigUint::from(total))
}

/// Calls `f` on every `s`-subset of `0..size` as a bitmask (`size ≤ 31`).
pub(crate) fn for_each_k_subset(size: usize, s: usize, mut f: impl FnMut(u32)) {
    debug_assert!(size < 32 && s <= size);
    if s == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << size;
    let mut v: u64 = (1u64 << s) - 1;
    while v < limit {
        f(v as u32);
        // Gosper's hack
        let t = v | (v - 1);
        v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
    }
}

/// Corners of a small grid as `u128` cell masks, with per-cell incidence.
#[derive(Clone, Debug)]
pub struct CornerMasks {
    pub params: GridParams,
    /// In enumeration order.
    pub masks: Vec<u128>,
    /// `incidence[cell]` lists indices into `masks`.
    pub incidence: Vec<Vec<u32>>,
}

impl CornerMasks {
    pub fn new(params: GridParams) -> Result<Self> {
        if params.cells > MAX_KERNEL_CELLS {
            return Err(Error::TooLarge { what: "cell count for the bitmask kernel", limit: MAX_KERNEL_CELLS });
        }
        let masks: Vec<u128> = enumerate_corners(params).map(|c| c.mask(&params)).collect();
        let mut incidence = vec![Vec::new(); params.cells];
        for (i, &m) in masks.iter().enumerate() {
            let mut rest = m;
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                incidence[c].push(i as u32);
            }
        }
        Ok(CornerMasks { params, masks, incidence })
    }

    pub fn all_cells(&self) -> u128 {
        if self.params.cells == 128 {
            u128::MAX
        } else {
            (1u128 << self.params.cells) - 1
        }
    }

    pub fn count_in(&self, set: u128) -> usize {
        self.masks.iter().filter(|&&m| m & set == m).count()
    }

    pub fn is_free(&self, set: u128) -> bool {
        self.masks.iter().all(|&m| m & set != m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[usize]) -> Point {
        Point::from(c)
    }

    fn set(params: GridParams, pts: &[&[usize]]) -> GridSet {
        let pts: Vec<Point> = pts.iter().map(|c| p(c)).collect();
        GridSet::from_points(params, &pts).unwrap()
    }

    #[test]
    fn params_reject_degenerate_and_oversize() {
        assert_eq!(GridParams::new(0, 2), Err(Error::InvalidGrid { n: 0, k: 2 }));
        assert_eq!(GridParams::new(3, 0), Err(Error::InvalidGrid { n: 3, k: 0 }));
        assert!(matches!(GridParams::new(1 << 20, 4), Err(Error::TooLarge { .. })));
        assert_eq!(GridParams::new(1, 64).unwrap().cells(), 1);
    }

    #[test]
    fn point_index_round_trip_uses_coordinate_one_fastest() {
        let g = GridParams::new(3, 2).unwrap();
        assert_eq!(g.cell_of(&p(&[2, 1])).unwrap(), 1);
        assert_eq!(g.cell_of(&p(&[1, 2])).unwrap(), 3);
        for c in 0..9 {
            assert_eq!(g.cell_of(&g.point_of(c)).unwrap(), c);
        }
        assert!(g.cell_of(&p(&[4, 1])).is_err());
        assert!(g.cell_of(&p(&[1])).is_err());
    }

    #[test]
    fn enumeration_small_cases() {
        let g = |n, k| GridParams::new(n, k).unwrap();
        assert_eq!(enumerate_corners(g(1, 2)).count(), 0);
        let two: Vec<_> = enumerate_corners(g(2, 2)).collect();
        assert_eq!(two, vec![Corner { apex: 0, diff: 1 }]);
        assert_eq!(two[0].apex_point(&g(2, 2)), p(&[1, 1]));
        let three: Vec<_> = enumerate_corners(g(3, 2)).collect();
        assert_eq!(three.len(), 5);
        assert_eq!(three.iter().filter(|c| c.diff == 1).count(), 4);
        assert_eq!(three[4], Corner { apex: 0, diff: 2 });
        // apexes of d = 1 in canonical order: (1,1),(2,1),(1,2),(2,2)
        let apexes: Vec<_> = three[..4].iter().map(|c| c.apex).collect();
        assert_eq!(apexes, vec![0, 1, 3, 4]);
        assert_eq!(enumerate_corners(g(2, 3)).count(), 1);
    }

    #[test]
    fn corner_validation() {
        let g = GridParams::new(3, 2).unwrap();
        assert!(Corner::new(&g, &p(&[1, 1]), 2).is_ok());
        assert!(Corner::new(&g, &p(&[2, 1]), 2).is_err());
        assert!(Corner::new(&g, &p(&[1, 1]), 0).is_err());
        let c = Corner::new(&g, &p(&[1, 2]), 1).unwrap();
        assert_eq!(c.points(&g), vec![p(&[1, 2]), p(&[2, 2]), p(&[1, 3])]);
    }

    #[test]
    fn corners_through_matches_filtered_enumeration() {
        for (n, k) in [(4, 2), (3, 3), (5, 1), (2, 4)] {
            let g = GridParams::new(n, k).unwrap();
            for cell in 0..g.cells() {
                let expect: Vec<_> =
                    enumerate_corners(g).filter(|c| c.cells(&g).any(|x| x == cell)).collect();
                assert_eq!(g.corners_through(cell), expect, "n={n} k={k} cell={cell}");
            }
        }
    }

    #[test]
    fn counting_examples() {
        let g5 = GridParams::new(5, 2).unwrap();
        assert_eq!(count_corners(&GridSet::empty(g5)), 0);
        let g3 = GridParams::new(3, 2).unwrap();
        assert_eq!(count_corners(&GridSet::full(g3)), 5);
        let g2 = GridParams::new(2, 2).unwrap();
        assert_eq!(count_corners(&set(g2, &[&[1, 1], &[2, 1], &[1, 2]])), 1);
    }

    #[test]
    fn corner_free_examples() {
        let g2 = GridParams::new(2, 2).unwrap();
        assert!(is_corner_free(&GridSet::empty(g2)));
        let w = find_corner(&GridSet::full(g2)).unwrap();
        assert_eq!((w.apex_point(&g2), w.diff), (p(&[1, 1]), 1));
        assert!(is_corner_free(&set(g2, &[&[1, 2], &[2, 1], &[2, 2]])));
    }

    #[test]
    fn subset_sum_examples() {
        let g3 = GridParams::new(3, 2).unwrap();
        let full = GridSet::full(g3);
        assert_eq!(subset_corner_sum(&full, 5).unwrap(), BigUint::from(75u32));
        assert_eq!(subset_corner_sum_exhaustive(&full, 5).unwrap(), BigUint::from(75u32));
        assert!(subset_corner_sum(&full, 2).unwrap().is_zero());
        assert!(subset_corner_sum(&full, 10).is_err());
        let free = set(g3, &[&[1, 2], &[2, 1], &[2, 2]]);
        assert!(subset_corner_sum(&free, 3).unwrap().is_zero());
    }

    #[test]
    fn exhaustive_subset_sum_rejects_large_sets() {
        let g = GridParams::new(5, 2).unwrap();
        assert!(matches!(
            subset_corner_sum_exhaustive(&GridSet::full(g), 3),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn gosper_visits_binomial_many_subsets() {
        let mut n = 0;
        for_each_k_subset(9, 4, |m| {
            assert_eq!(m.count_ones(), 4);
            n += 1;
        });
        assert_eq!(n, 126);
    }
}
