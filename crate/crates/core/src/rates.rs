//! The rate functions `f`, `Λ`, `Υ`, `Ψ` derived from `c_k(n)`, and the
//! configurable constants `α_k`, `b(k)`, `C′` that stand in for existential ones.
//!
//! With `L = log n`:
//!
//! * `f(n) = c_k(n) / n^k`
//! * `Λ(n) = n / L^{3k+3} · f(n)^{k+3}`
//! * `Υ(n) = L^{3k+1} / n · (n^k / c_k(n))^k`
//! * `Ψ(n) = f(n) / L^3`
//!
//! so that `Υ(n) · n · Ψ(n)^k = L` identically.

use alloc::collections::BTreeMap;
use alloc::format;

use crate::extremal::ExtremalTable;
use crate::{Error, Result};

/// Logarithm base used by the rate functions.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum LogBase {
    #[default]
    Natural,
    Base(f64),
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => libm::log(x),
            LogBase::Base(b) => libm::log(x) / libm::log(b),
        }
    }
}

/// `b(k) = 2^{2k} + 1`, the default surrogate for a constant exceeding `2^{2k}`.
pub fn default_b(k: usize) -> f64 {
    libm::pow(2.0, 2.0 * k as f64) + 1.0
}

/// Default density multiplier `K` used for `C′`.
pub const DEFAULT_K: f64 = 2.0;

/// `C′ = 8·K·b(k)` with `K = 2`.
pub fn default_c_prime(k: usize) -> f64 {
    8.0 * DEFAULT_K * default_b(k)
}

/// Exponent `β = 1/⌈log2 k⌉` in the decay form `f(n) ≤ 2^{-α (log2 n)^β}`; `1` for `k = 1`.
pub fn decay_exponent(k: usize) -> f64 {
    let l = (usize::BITS - (k.max(1) - 1).leading_zeros()) as f64;
    if l == 0.0 {
        1.0
    } else {
        1.0 / l
    }
}

/// Largest `α` with `f(n) ≤ 2^{-α (log2 n)^β}` over the given exact `(n, c)` pairs
/// (`n ≥ 2`), i.e. the minimum of `-log2 f(n) / (log2 n)^β`. Falls back to `1.0`
/// when no pair with `f(n) < 1` is available.
pub fn fit_alpha(k: usize, values: &[(usize, usize)]) -> f64 {
    let beta = decay_exponent(k);
    let fitted = values
        .iter()
        .filter(|&&(n, c)| n >= 2 && c > 0)
        .map(|&(n, c)| {
            let f = c as f64 / libm::pow(n as f64, k as f64);
            -libm::log2(f) / libm::pow(libm::log2(n as f64), beta)
        })
        .filter(|a| *a > 0.0)
        .fold(f64::INFINITY, f64::min);
    if fitted.is_finite() {
        fitted
    } else {
        1.0
    }
}

/// Rate-function evaluator for one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct RateFunctions {
    pub k: usize,
    /// Known `c_k(n)` values.
    pub table: BTreeMap<usize, usize>,
    pub log_base: LogBase,
    pub alpha_k: f64,
    pub b_k: f64,
    pub c_prime: f64,
}

impl RateFunctions {
    /// Evaluator over caller-supplied `(n, c_k(n))` values, with default constants.
    pub fn from_values(k: usize, values: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let table: BTreeMap<usize, usize> = values.into_iter().collect();
        let pairs: alloc::vec::Vec<(usize, usize)> = table.iter().map(|(&n, &c)| (n, c)).collect();
        RateFunctions {
            k,
            alpha_k: fit_alpha(k, &pairs),
            table,
            log_base: LogBase::Natural,
            b_k: default_b(k),
            c_prime: default_c_prime(k),
        }
    }

    /// Evaluator over the exact entries of an extremal table.
    pub fn from_table(table: &ExtremalTable, k: usize) -> Self {
        Self::from_values(k, table.exact_values(k))
    }

    pub fn with_log_base(mut self, base: LogBase) -> Self {
        self.log_base = base;
        self
    }

    pub fn c(&self, n: usize) -> Result<usize> {
        self.table.get(&n).copied().ok_or(Error::TableMiss { k: self.k, n })
    }

    pub fn eval(&self, n: usize) -> Result<RateValues> {
        rate_eval(self, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateValues {
    pub n: usize,
    pub log_n: f64,
    pub f: f64,
    pub lambda: f64,
    pub upsilon: f64,
    pub psi: f64,
    /// `log n ≤ 1`: powers of `log n` shrink instead of grow, so the values
    /// are outside the regime where the functions carry their usual meaning.
    pub below_unit_log: bool,
}

impl RateValues {
    /// `Υ·n·Ψ^k / log n`, which equals 1 up to rounding.
    pub fn identity_ratio(&self, k: usize) -> f64 {
        self.upsilon * self.n as f64 * libm::pow(self.psi, k as f64) / self.log_n
    }
}

pub fn rate_eval(rf: &RateFunctions, n: usize) -> Result<RateValues> {
    let c = rf.c(n)?;
    if c == 0 {
        return Err(Error::Domain(format!("c_{}({n}) = 0", rf.k)));
    }
    let log_n = rf.log_base.log(n as f64);
    if !(log_n > 0.0) {
        return Err(Error::Domain(format!("log {n} = {log_n} is not positive")));
    }
    let k = rf.k as f64;
    let nf = n as f64;
    let f = c as f64 / libm::pow(nf, k);
    let lambda = nf / libm::pow(log_n, 3.0 * k + 3.0) * libm::pow(f, k + 3.0);
    let upsilon = libm::pow(log_n, 3.0 * k + 1.0) / nf * libm::pow(1.0 / f, k);
    let psi = f / libm::pow(log_n, 3.0);
    Ok(RateValues { n, log_n, f, lambda, upsilon, psi, below_unit_log: log_n <= 1.0 })
}
