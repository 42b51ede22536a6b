//! Sieve of Eratosthenes and the prime-counting bounds used by the grid-family audit.

use alloc::vec;
use alloc::vec::Vec;

/// Primes `p ≤ x` in increasing order. Negative or NaN `x` yields nothing.
pub fn primes_up_to(x: f64) -> Vec<usize> {
    if !(x >= 2.0) {
        return Vec::new();
    }
    let limit = libm::floor(x) as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Distinct prime factors of `m` (trial division).
pub fn distinct_prime_factors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Smallest `x` from which `π(x) ≥ x / ln x` holds for every larger real `x`.
pub const PNT_LOWER_VALID_FROM: f64 = 17.0;

/// Comparison of `π(x)` against `x/ln x` and `2x/ln x`.
#[derive(Clone, Debug, PartialEq)]
pub struct PntCheck {
    pub x: f64,
    pub pi: usize,
    /// `x / ln x`; `None` when `x ≤ 1`.
    pub lower: Option<f64>,
    /// `2x / ln x`; `None` when `x ≤ 1`.
    pub upper: Option<f64>,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// `x ≥ 17`, the range where the lower bound is known to hold.
    pub in_validity_window: bool,
}

impl PntCheck {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

pub fn pnt_bounds_check(x: f64) -> PntCheck {
    let pi = primes_up_to(x).len();
    let (lower, upper) = if x > 1.0 {
        let l = x / libm::log(x);
        (Some(l), Some(2.0 * l))
    } else {
        (None, None)
    };
    PntCheck {
        x,
        pi,
        lower,
        upper,
        lower_holds: lower.is_some_and(|l| l <= pi as f64),
        upper_holds: upper.is_some_and(|u| pi as f64 <= u),
        in_validity_window: x >= PNT_LOWER_VALID_FROM,
    }
}
