//! Corners in k-dimensional grids.
//!
//! A *k-dimensional corner* in `[n]^k` is a point set
//! `{a} ∪ {a + d·e_i : 1 ≤ i ≤ k}` with `d > 0`. This crate enumerates and
//! counts corners, computes the extremal function `c_k(n)` (largest
//! corner-free subset) and the exact number of corner-free subsets at desk
//! scale, implements lower-bound constructions, executable supersaturation
//! audits, and an end-to-end hypergraph-container counting pipeline.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the result
//! cache and the command-line front end live in the companion `corners`
//! crate.
//!
//! Coordinates are 1-based at the API surface ([`Point`]) and cells are
//! addressed internally by their 0-based canonical index: lexicographic
//! with coordinate 1 varying fastest.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bitset;
pub mod census;
pub mod constructions;
pub mod containers;
mod error;
pub mod extremal;
pub mod grid;
pub mod pipeline;
pub mod primes;
pub mod rates;
pub mod supersat;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use grid::{
    count_corners, enumerate_corners, find_corner, is_corner_free, subset_corner_sum,
    subset_corner_sum_exhaustive, Corner, GridParams, GridSet, Point,
};

/// Search budget shared by the exact solvers.
///
/// `max_nodes` counts visited search nodes; `max_cells` bounds the instance
/// size the bit-parallel kernels accept (at most 128 cells).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: u64,
    pub max_cells: usize,
}

impl Limits {
    pub const fn with_nodes(max_nodes: u64) -> Self {
        Limits { max_nodes, max_cells: MAX_KERNEL_CELLS }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: 200_000_000, max_cells: MAX_KERNEL_CELLS }
    }
}

/// Hard ceiling for the `u128`-mask search kernels.
pub const MAX_KERNEL_CELLS: usize = 128;
