//! End-to-end container count for corner-free sets of a small grid.
//!
//! Sets `ε = Υ(n)` and `τ = Ψ(n)`, reports whether the container theorem's
//! hypotheses hold (at desk scale they generally do not), builds a
//! container family with the constructive builder anyway, verifies it, and
//! compares the exact census with `Σ_S 2^{|S|}`.

use alloc::format;

use num_bigint::BigUint;

use crate::census::CensusRecord;
use crate::containers::{
    build_containers, check_hypotheses, corner_hypergraph, family_size_budget, verify_containers, BuildLimits,
    ContainerSet, HypothesisReport, VerificationReport, VerifyOptions,
};
use crate::grid::GridParams;
use crate::rates::{default_c_prime, LogBase, RateFunctions, RateValues};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub log_base: LogBase,
    /// `C′`; `None` selects the default `8·K·b(k)`.
    pub c_prime: Option<f64>,
    pub build: BuildLimits,
    pub verify: VerifyOptions,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            log_base: LogBase::Natural,
            c_prime: None,
            build: BuildLimits::default(),
            verify: VerifyOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub k: usize,
    pub n: usize,
    pub c: usize,
    pub census: BigUint,
    /// `None` when `log n = 0` (the one-cell grid).
    pub rates: Option<RateValues>,
    /// `ε` handed to the builder: `Υ(n)` capped at 1.
    pub epsilon: f64,
    pub epsilon_capped: bool,
    /// `Ψ(n) < 1/(200·(k+1)^{2(k+1)})`.
    pub psi_small: bool,
    /// `log n > (k+1)^{3(k+1)}`.
    pub log_n_large: bool,
    /// Container theorem hypotheses at `ε = Υ(n)`, `τ = Ψ(n)`.
    pub hypotheses: Option<HypothesisReport>,
    pub family: ContainerSet,
    pub verification: VerificationReport,
    /// `Σ_S 2^{|S|}` over the family.
    pub power_sum: BigUint,
    pub census_within_sum: bool,
    /// `C′·c_k(n)`.
    pub size_threshold: f64,
    pub max_container: usize,
    pub max_container_below_threshold: bool,
    /// `ln |C|`.
    pub log_family_size: f64,
    /// `c(r)·|V|·τ·ln(1/ε)·ln(1/τ)` with `c(r) = 1000·r·r!³`.
    pub family_size_budget: Option<f64>,
}

/// Runs the pipeline for `[n]^k` with exact `c = c_k(n)` and an exact census.
pub fn container_count_pipeline(
    params: GridParams,
    c: usize,
    census: &CensusRecord,
    cfg: &PipelineConfig,
) -> Result<PipelineReport> {
    let (n, k) = (params.n(), params.k());
    if census.k != k || census.n != n || !census.complete {
        return Err(Error::InvalidArgument(format!("an exact census of [{n}]^{k} is required")));
    }
    let h = corner_hypergraph(params)?;
    let c_prime = cfg.c_prime.unwrap_or_else(|| default_c_prime(k));
    let rf = RateFunctions::from_values(k, [(n, c)]).with_log_base(cfg.log_base);
    let rates = if n >= 2 { Some(rf.eval(n)?) } else { None };
    let (epsilon, capped) = match rates {
        Some(r) if r.upsilon < 1.0 => (r.upsilon, false),
        Some(_) => (1.0, true),
        None => (1.0, false),
    };
    let r = (k + 1) as f64;
    let psi_small = rates.is_some_and(|v| v.psi < 1.0 / (200.0 * libm::pow(r, 2.0 * r)));
    let log_n_large = rates.is_some_and(|v| v.log_n > libm::pow(r, 3.0 * r));
    let hypotheses = rates.map(|v| check_hypotheses(&h, v.upsilon, v.psi));

    let family = build_containers(&h, epsilon, cfg.build)?;
    let verification = verify_containers(&h, &family, epsilon, cfg.verify);
    if !verification.sparse {
        return Err(Error::VerificationFailed { property: "sparsity: containers span at most ε·e(H) edges".into() });
    }
    if !verification.covers {
        return Err(Error::VerificationFailed {
            property: format!("coverage: independent set {:?} is in no container", verification.uncovered.as_deref().unwrap_or(&[])),
        });
    }
    let power_sum = family.power_sum();
    let census_within_sum = census.count <= power_sum;
    if !census_within_sum {
        return Err(Error::VerificationFailed { property: "census ≤ Σ_S 2^{|S|}".into() });
    }
    let size_threshold = c_prime * c as f64;
    let max_container = family.max_size();
    let budget = hypotheses.as_ref().map(|hy| family_size_budget(hy.c_r_bound, h.vertex_count(), epsilon, hy.tau));
    Ok(PipelineReport {
        k,
        n,
        c,
        census: census.count.clone(),
        rates,
        epsilon,
        epsilon_capped: capped,
        psi_small,
        log_n_large,
        hypotheses,
        log_family_size: verification.log_family_size,
        verification,
        power_sum,
        census_within_sum,
        size_threshold,
        max_container,
        max_container_below_threshold: (max_container as f64) < size_threshold,
        family_size_budget: budget,
        family,
    })
}
