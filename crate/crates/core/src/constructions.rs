//! Lower-bound constructions for corner-free sets.
//!
//! * [`behrend_set`]: a 3-AP-free subset of `[1, n]` from the digit-sphere
//!   construction, with the digit parameters chosen by scanning.
//! * [`diagonal_corner_free_2d`]: lifts a 3-AP-free set `A` to the union of
//!   diagonals `y − x ∈ A` in `[n]^2`, which is corner-free.
//! * [`heuristic_corner_free`]: a seeded local search for any dimension.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{find_corner, GridParams, GridSet};
use crate::{Error, Result};

/// A subset of `[1, n]` with no `x < y < z` satisfying `x + z = 2y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APFreeSet {
    n: usize,
    elements: Vec<usize>,
}

impl APFreeSet {
    /// Sorts and deduplicates `elements`, then checks range and AP-freeness.
    pub fn new(n: usize, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidArgument(alloc::format!("element {bad} outside [1, {n}]")));
        }
        if let Some(triple) = three_ap_witness(&elements) {
            return Err(Error::NotApFree { triple });
        }
        Ok(APFreeSet { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Pairwise `O(|A|²)` search for a 3-term progression in a sorted, deduplicated slice.
pub fn three_ap_witness(sorted: &[usize]) -> Option<(usize, usize, usize)> {
    let &max = sorted.last()?;
    let mut member = vec![false; max + 1];
    for &e in sorted {
        member[e] = true;
    }
    for (i, &x) in sorted.iter().enumerate() {
        for &z in &sorted[i + 1..] {
            if (x + z) % 2 == 0 && member[(x + z) / 2] {
                return Some((x, (x + z) / 2, z));
            }
        }
    }
    None
}

/// Digit parameters of one candidate Behrend set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BehrendParams {
    pub base: usize,
    pub digits: usize,
    /// Squared norm of the selected shell; `None` when the whole digit cube is used.
    pub shell: Option<usize>,
}

/// Largest 3-AP-free subset of `[1, n]` found over the scanned digit parameters.
pub fn behrend_set(n: usize) -> APFreeSet {
    behrend_set_with_params(n).0
}

/// [`behrend_set`] together with the winning parameters.
///
/// Integers `0 ≤ v < n` are written in base `b` with `m` digits from
/// `[0, h)`, `h = ⌈b/2⌉`, so adding two of them never carries and
/// `x + z = 2y` holds digit-wise. Vectors on one sphere `Σ digit² = r` then
/// contain no progression by strict convexity; when `h = 2` the whole cube
/// is progression-free. Each `v` maps to `v + 1`.
pub fn behrend_set_with_params(n: usize) -> (APFreeSet, Option<BehrendParams>) {
    if n == 0 {
        return (APFreeSet { n, elements: Vec::new() }, None);
    }
    let mut best: Vec<usize> = vec![1];
    let mut best_params = None;
    // the base-3 cubes are cheap and give a floor for pruning the scan
    let mut floor = 0;
    let mut m = 1;
    while 3usize.saturating_pow(m as u32 - 1) < n {
        floor = floor.max(behrend_candidate(n, 3, m).0.len());
        m += 1;
    }
    let mut m = 1;
    // the smallest usable base is 3; stop once its top digit cannot be used
    while 3usize.saturating_pow(m as u32 - 1) < n {
        // one digit only helps through the two-element cube {0, 1}
        let b_max = if m == 1 { 3 } else { 2 * nth_root_ceil(n, m) + 2 };
        for b in 3..=b_max {
            if b.saturating_pow(m as u32 - 1) >= n && m > 1 {
                break;
            }
            // a sphere holds at most h^(m-1) vectors: the last digit is determined
            let h = b.div_ceil(2);
            let cap = if h <= 2 { h.saturating_pow(m as u32) } else { h.saturating_pow(m as u32 - 1) };
            if cap < floor || cap <= best.len() {
                continue;
            }
            let (candidate, shell) = behrend_candidate(n, b, m);
            if candidate.len() > best.len() {
                best = candidate;
                best_params = Some(BehrendParams { base: b, digits: m, shell });
            }
        }
        m += 1;
    }
    let set = APFreeSet::new(n, best).expect("digit-sphere construction is 3-AP-free");
    (set, best_params)
}

fn behrend_candidate(n: usize, b: usize, m: usize) -> (Vec<usize>, Option<usize>) {
    let h = b.div_ceil(2);
    let mut values: Vec<(usize, usize)> = Vec::new(); // (value, squared norm)
    collect_digit_vectors(n, b, h, m, 0, 0, &mut values);
    if h <= 2 {
        let mut all: Vec<usize> = values.iter().map(|&(v, _)| v + 1).collect();
        all.sort_unstable();
        return (all, None);
    }
    let mut shells: BTreeMap<usize, usize> = BTreeMap::new();
    for &(_, r) in &values {
        *shells.entry(r).or_default() += 1;
    }
    // most populated shell, smallest norm on ties
    let Some((&shell, _)) = shells.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))) else {
        return (Vec::new(), None);
    };
    let mut out: Vec<usize> = values.iter().filter(|&&(_, r)| r == shell).map(|&(v, _)| v + 1).collect();
    out.sort_unstable();
    (out, Some(shell))
}

/// Values `< n` with `remaining` more digits in `[0, h)` appended to `prefix`.
fn collect_digit_vectors(
    n: usize,
    b: usize,
    h: usize,
    remaining: usize,
    prefix: usize,
    norm: usize,
    out: &mut Vec<(usize, usize)>,
) {
    if remaining == 0 {
        out.push((prefix, norm));
        return;
    }
    let scale = b.saturating_pow(remaining as u32 - 1);
    for d in 0..h {
        let Some(v) = prefix.checked_mul(b).and_then(|v| v.checked_add(d)) else {
            return;
        };
        // smallest completion is v * b^(remaining-1)
        if v.saturating_mul(scale) >= n {
            return;
        }
        collect_digit_vectors(n, b, h, remaining - 1, v, norm + d * d, out);
    }
}

fn nth_root_ceil(n: usize, m: usize) -> usize {
    let mut r = libm::pow(n as f64, 1.0 / m as f64) as usize;
    while r.saturating_pow(m as u32) < n {
        r += 1;
    }
    r.max(1)
}

/// Output of [`diagonal_corner_free_2d`].
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalConstruction {
    pub set: GridSet,
    /// Elements `a ≥ n` whose diagonal misses the grid.
    pub dropped: Vec<usize>,
}

/// `B = {(x, y) ∈ [n]^2 : y − x ∈ A}`, with `|B| = Σ_{a ∈ A, a < n} (n − a)`.
///
/// A corner `(x, y), (x+d, y), (x, y+d)` in `B` would give `a₂ + a₃ = 2a₁`
/// for `a₁ = y − x`, `a₂ = a₁ − d`, `a₃ = a₁ + d`, all in `A`. The result is
/// still re-checked against the corner oracle.
pub fn diagonal_corner_free_2d(n: usize, a: &APFreeSet) -> Result<DiagonalConstruction> {
    let params = GridParams::new(n, 2)?;
    let mut set = GridSet::empty(params);
    let mut dropped = Vec::new();
    for &offset in a.elements() {
        if offset >= n {
            dropped.push(offset);
            continue;
        }
        for x in 0..n - offset {
            // (x+1, x+1+offset) in 1-based coordinates
            set.insert_cell(x + (x + offset) * n);
        }
    }
    if let Some(c) = find_corner(&set) {
        return Err(Error::VerificationFailed {
            property: alloc::format!("diagonal set contains the corner at cell {} with d={}", c.apex, c.diff),
        });
    }
    Ok(DiagonalConstruction { set, dropped })
}

/// Validates `values` as a 3-AP-free set and builds the diagonal set.
pub fn diagonal_from_values(n: usize, values: &[usize]) -> Result<DiagonalConstruction> {
    let bound = values.iter().copied().max().unwrap_or(0).max(n);
    let ap = APFreeSet::new(bound, values.to_vec())?;
    diagonal_corner_free_2d(n, &ap)
}

/// Seeded local search for a large corner-free set.
///
/// Each step adds a uniformly random absent cell. If that closes corners,
/// one cell of the new corners is removed: the one leaving the fewest
/// corners, lowest canonical index on ties. The set therefore stays
/// corner-free and never shrinks; swaps with another cell are plateau moves.
pub fn heuristic_corner_free(params: GridParams, budget: u64, seed: u64) -> GridSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = params.cells();
    let mut current = GridSet::empty(params);
    let mut best = current.clone();
    let mut size = 0usize;
    for _ in 0..budget {
        if size == cells {
            break;
        }
        let added = loop {
            let c = rng.random_range(0..cells);
            if !current.contains_cell(c) {
                break c;
            }
        };
        let new_corners: Vec<_> = params
            .corners_through(added)
            .into_iter()
            .filter(|c| c.cells(&params).all(|x| x == added || current.contains_cell(x)))
            .collect();
        if new_corners.is_empty() {
            current.insert_cell(added);
            size += 1;
            if size > best.len() {
                best = current.clone();
            }
            continue;
        }
        let mut candidates: Vec<usize> = new_corners.iter().flat_map(|c| c.cells(&params)).collect();
        candidates.sort_unstable();
        candidates.dedup();
        let remove = candidates
            .into_iter()
            .min_by_key(|&x| (new_corners.iter().filter(|c| !c.cells(&params).any(|y| y == x)).count(), x))
            .expect("new corners have cells");
        let left = new_corners.iter().filter(|c| !c.cells(&params).any(|y| y == remove)).count();
        if left == 0 && remove != added {
            current.insert_cell(added);
            current.remove_cell(remove);
        }
    }
    debug_assert!(crate::grid::is_corner_free(&best));
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{count_corners, is_corner_free, Point};

    #[test]
    fn witness_is_reported_in_order() {
        assert_eq!(three_ap_witness(&[1, 2, 4, 5, 7]), Some((1, 4, 7)));
        assert_eq!(three_ap_witness(&[1, 2, 4, 5, 10]), None);
        assert_eq!(three_ap_witness(&[]), None);
        assert_eq!(
            APFreeSet::new(10, vec![3, 1, 2]),
            Err(Error::NotApFree { triple: (1, 2, 3) })
        );
        assert!(APFreeSet::new(5, vec![6]).is_err());
    }

    #[test]
    fn behrend_small() {
        assert_eq!(behrend_set(1).elements(), &[1]);
        assert_eq!(behrend_set(2).elements(), &[1, 2]);
        assert!(behrend_set(10).len() >= 4);
    }

    #[test]
    fn diagonal_examples() {
        let ap = APFreeSet::new(2, vec![1, 2]).unwrap();
        let d = diagonal_corner_free_2d(3, &ap).unwrap();
        let g = GridParams::new(3, 2).unwrap();
        let expect: Vec<Point> =
            [[1, 2], [2, 3], [1, 3]].iter().map(|c| Point::from(&c[..])).collect();
        assert_eq!(d.set, GridSet::from_points(g, &expect).unwrap());
        assert!(d.dropped.is_empty());

        let empty = APFreeSet::new(5, vec![]).unwrap();
        assert!(diagonal_corner_free_2d(5, &empty).unwrap().set.is_empty());

        let one = APFreeSet::new(4, vec![1]).unwrap();
        let d = diagonal_corner_free_2d(4, &one).unwrap();
        assert_eq!(d.set.len(), 3);
        assert!(is_corner_free(&d.set));
    }

    #[test]
    fn diagonal_drops_out_of_range_offsets() {
        let d = diagonal_from_values(4, &[1, 4]).unwrap();
        assert_eq!(d.dropped, vec![4]);
        assert_eq!(d.set.len(), 3);
        assert_eq!(diagonal_from_values(6, &[1, 2, 3]).unwrap_err(), Error::NotApFree { triple: (1, 2, 3) });
    }

    #[test]
    fn heuristic_zero_budget_is_empty() {
        let g = GridParams::new(4, 2).unwrap();
        assert!(heuristic_corner_free(g, 0, 7).is_empty());
    }

    #[test]
    fn heuristic_on_3x3_reaches_six() {
        let g = GridParams::new(3, 2).unwrap();
        let s = heuristic_corner_free(g, 5_000, 1);
        assert!(s.len() >= 6, "got {}", s.len());
        assert_eq!(count_corners(&s), 0);
    }

    #[test]
    fn heuristic_is_deterministic_per_seed() {
        let g = GridParams::new(5, 2).unwrap();
        assert_eq!(heuristic_corner_free(g, 2_000, 42), heuristic_corner_free(g, 2_000, 42));
    }
}
