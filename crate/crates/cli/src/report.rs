//! JSON views of core results. Keys are emitted in sorted order, so output
//! is byte-stable for equal inputs.

use corners_core::census::CensusRecord;
use corners_core::containers::{CodegreeProfile, HypothesisReport, VerificationMode, VerificationReport};
use corners_core::extremal::{ExtremalRecord, MinCorners, MinCornersMethod, Status};
use corners_core::pipeline::PipelineReport;
use corners_core::primes::PntCheck;
use corners_core::rates::RateValues;
use corners_core::supersat::{AuditReport, DoubleCountingCheck, TargetReport};
use corners_core::{Corner, GridParams};
use serde_json::{json, Value};

use crate::formats::container_set_json;

/// Integers beyond `u64` become decimal strings.
pub fn big(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn corner(params: &GridParams, c: Corner) -> Value {
    json!({ "apex": c.apex_point(params).coords, "d": c.diff })
}

pub fn extremal(r: &ExtremalRecord) -> Value {
    json!({
        "k": r.k,
        "n": r.n,
        "status": match r.status { Status::Exact => "exact", Status::Bounded => "bounded" },
        "value": r.value(),
        "lower": r.lower,
        "upper": r.upper,
        "method": r.method,
        "witness": r.witness.as_ref().map(|w| w.points().into_iter().map(|p| p.coords).collect::<Vec<_>>()),
    })
}

pub fn min_corners(m: &MinCorners) -> Value {
    json!({
        "s": m.s,
        "value": m.value,
        "lower": m.lower,
        "exact": m.exact,
        "method": match m.method {
            MinCornersMethod::Exhaustive => "exhaustive",
            _ => "branch-and-bound",
        },
        "witness": m.witness.points().into_iter().map(|p| p.coords).collect::<Vec<_>>(),
    })
}

pub fn census(r: &CensusRecord, c: Option<usize>) -> Value {
    json!({
        "k": r.k,
        "n": r.n,
        "count": r.count.to_string(),
        "complete": r.complete,
        "method": r.method.as_str(),
        "log2_count": r.log2_count(),
        "c_k": c,
        "ratio": c.and_then(|c| r.ratio(c)),
    })
}

pub fn rates(v: &RateValues) -> Value {
    json!({
        "n": v.n,
        "log_n": v.log_n,
        "f": v.f,
        "lambda": v.lambda,
        "upsilon": v.upsilon,
        "psi": v.psi,
        "below_unit_log": v.below_unit_log,
    })
}

pub fn pnt(p: &PntCheck) -> Value {
    json!({
        "x": p.x,
        "pi": p.pi,
        "lower": p.lower,
        "upper": p.upper,
        "lower_holds": p.lower_holds,
        "upper_holds": p.upper_holds,
        "in_validity_window": p.in_validity_window,
    })
}

pub fn codegree(p: &CodegreeProfile) -> Value {
    json!({
        "r": p.r,
        "deltas": p.deltas,
        "avg_degree": p.avg_degree,
        "tau": p.tau,
        "value": p.value,
    })
}

pub fn hypotheses(h: &HypothesisReport) -> Value {
    json!({
        "r": h.r,
        "epsilon": h.epsilon,
        "tau": h.tau,
        "parameters_in_range": h.parameters_in_range,
        "tau_limit": h.tau_limit,
        "tau_ok": h.tau_ok,
        "codegree": h.codegree,
        "codegree_limit": h.codegree_limit,
        "codegree_ok": h.codegree_ok,
        "c_r_bound": h.c_r_bound,
        "all_met": h.all_met(),
    })
}

pub fn verification(v: &VerificationReport) -> Value {
    let mode = match v.mode {
        VerificationMode::Exhaustive => json!({ "kind": "exhaustive" }),
        VerificationMode::Sampled { samples, seed } => json!({ "kind": "sampled", "samples": samples, "seed": seed }),
    };
    json!({
        "mode": mode,
        "sets_checked": v.sets_checked,
        "covers": v.covers,
        "uncovered": v.uncovered,
        "sparse": v.sparse,
        "max_edges": v.max_edges,
        "family_size": v.family_size,
        "log_family_size": v.log_family_size,
        "passed": v.passed(),
    })
}

pub fn double_counting(d: &DoubleCountingCheck) -> Value {
    json!({
        "gamma": big(d.gamma),
        "bound": d.bound,
        "preconditions_met": d.preconditions_met,
        "holds": d.holds,
        "identity": {
            "s": d.identity.s,
            "closed_form": d.identity.closed_form.to_string(),
            "exhaustive": d.identity.exhaustive.as_ref().map(ToString::to_string),
            "holds": d.identity.holds(),
        },
    })
}

pub fn audit(r: &AuditReport) -> Value {
    json!({
        "n": r.n,
        "k": r.k,
        "size": r.size,
        "M": r.config.side,
        "x": r.config.prime_cutoff,
        "K": r.config.density,
        "c_k_M": r.ck_side,
        "x_a": r.x_a,
        "family_size": r.family_size,
        "dense_size": r.dense_size,
        "log_base_divisors": 2,
        "entries": r.entries.iter().map(|e| json!({
            "label": e.label,
            "description": e.description,
            "lhs": e.lhs,
            "rhs": e.rhs,
            "relation": e.relation.as_str(),
            "preconditions_met": e.preconditions_met,
            "holds": e.holds,
            "note": e.note,
        })).collect::<Vec<_>>(),
    })
}

pub fn target(t: &TargetReport) -> Value {
    json!({
        "n": t.n,
        "k": t.k,
        "size": t.size,
        "c_k": t.c,
        "gamma": big(t.gamma),
        "rates": rates(&t.rates),
        "target": t.target,
        "margin": t.margin,
        "size_threshold": t.size_threshold,
        "meets_size_threshold": t.meets_size_threshold,
        "identity_ratio": t.identity_ratio,
        "note": "asymptotic statement; a negative margin at one n refutes nothing",
    })
}

pub fn pipeline(p: &PipelineReport) -> Value {
    json!({
        "k": p.k,
        "n": p.n,
        "c_k": p.c,
        "census": p.census.to_string(),
        "rates": p.rates.as_ref().map(rates),
        "epsilon": p.epsilon,
        "epsilon_capped": p.epsilon_capped,
        "psi_small": p.psi_small,
        "log_n_large": p.log_n_large,
        "hypotheses": p.hypotheses.as_ref().map(hypotheses),
        "containers": container_set_json(&p.family),
        "verification": verification(&p.verification),
        "power_sum": p.power_sum.to_string(),
        "census_within_sum": p.census_within_sum,
        "size_threshold": p.size_threshold,
        "max_container": p.max_container,
        "max_container_below_threshold": p.max_container_below_threshold,
        "log_family_size": p.log_family_size,
        "family_size_budget": p.family_size_budget,
    })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}
