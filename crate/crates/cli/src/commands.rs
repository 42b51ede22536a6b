use std::fs;
use std::io::Write;
use std::path::Path;

use corners_core::census::{
    combine, count_branch, count_corner_free_oracle, split_branches, CensusRecord, PRUNED_MAX_CELLS,
};
use corners_core::constructions::{
    behrend_set_with_params, diagonal_corner_free_2d, diagonal_from_values, heuristic_corner_free, DiagonalConstruction,
};
use corners_core::containers::{
    build_containers, check_hypotheses, codegree, corner_hypergraph, verify_containers, BuildLimits, Hypergraph,
    VerifyOptions,
};
use corners_core::extremal::{exact_c, min_corners_at_size, ExtremalRecord, Status};
use corners_core::pipeline::{container_count_pipeline, PipelineConfig};
use corners_core::primes::{pnt_bounds_check, primes_up_to};
use corners_core::rates::{LogBase, RateFunctions};
use corners_core::supersat::{
    audit_family, build_grid_family_with, check_double_counting, double_counting_identity, greedy_corner_witnesses,
    supersaturation_target, SupersatConfig,
};
use corners_core::{count_corners, enumerate_corners, find_corner, Error, GridParams, GridSet, Limits};
use rayon::prelude::*;
use serde_json::json;

use crate::cache::{Cache, CacheFile};
use crate::error::CliError;
use crate::formats::{container_set_json, grid_set_json, grid_set_text, hypergraph_text, parse_grid_set, parse_hypergraph};
use crate::report::{self, big, to_pretty};
use crate::{
    CensusArgs, Cli, Command, ConstructCmd, ContainersArgs, CornersArgs, ExtremalArgs, PipelineArgs, SetFormat,
    SupersatCmd, TableArgs,
};

struct Ctx<'a> {
    cli: &'a Cli,
    cache: Option<Cache>,
}

impl Ctx<'_> {
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.cli.out {
            Some(path) => fs::write(path, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }

    fn load(&self, k: usize) -> Result<CacheFile, CliError> {
        match &self.cache {
            Some(c) => c.load(k),
            None => Ok(CacheFile::empty(k)),
        }
    }

    fn update(&self, k: usize, f: impl FnOnce(&mut CacheFile) -> Result<(), CliError>) -> Result<(), CliError> {
        if let Some(c) = &self.cache {
            c.update(k, f)?;
        }
        Ok(())
    }

    /// Exact `c_k(n)` from the cache, or computed (and cached) when small enough.
    fn exact_ck(&self, k: usize, n: usize, limits: Limits) -> Result<usize, CliError> {
        if let Some(c) = self.load(k)?.table()?.exact_value(k, n) {
            return Ok(c);
        }
        let params = GridParams::new(n, k)?;
        if params.cells() > limits.max_cells {
            return Err(Error::TableMiss { k, n }.into());
        }
        let rec = exact_c(params, limits)?;
        self.update(k, |f| f.merge_extremal(&rec))?;
        rec.value().ok_or_else(|| Error::TableMiss { k, n }.into())
    }
}

fn limits(budget: Option<u64>) -> Limits {
    budget.map(Limits::with_nodes).unwrap_or_default()
}

fn read_set(path: &Path) -> Result<GridSet, CliError> {
    parse_grid_set(&fs::read_to_string(path)?)
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = Ctx { cli, cache: cli.cache_dir.as_ref().map(Cache::new) };
    match &cli.command {
        Command::Corners(a) => corners(&ctx, a),
        Command::Extremal(a) => extremal(&ctx, a),
        Command::Census(a) => census(&ctx, a),
        Command::Construct(c) => construct(&ctx, c),
        Command::Supersat(c) => supersat(&ctx, c),
        Command::Containers(a) => containers(&ctx, a),
        Command::Pipeline(a) => pipeline(&ctx, a),
        Command::Table(a) => table(&ctx, a),
    }
}

fn corners(ctx: &Ctx, a: &CornersArgs) -> Result<(), CliError> {
    let value = match &a.set {
        Some(path) => {
            let set = read_set(path)?;
            let p = *set.params();
            let mut v = json!({
                "k": p.k(),
                "n": p.n(),
                "size": set.len(),
                "corners": big(count_corners(&set)),
                "corner_free": find_corner(&set).is_none(),
                "first_corner": find_corner(&set).map(|c| report::corner(&p, c)),
            });
            if a.list {
                let list: Vec<_> =
                    enumerate_corners(p).filter(|&c| set.contains_corner(c)).map(|c| report::corner(&p, c)).collect();
                v["list"] = json!(list);
            }
            v
        }
        None => {
            let p = GridParams::new(a.n.expect("required"), a.k.expect("required"))?;
            let mut v = json!({ "k": p.k(), "n": p.n(), "corners": big(p.corner_total()) });
            if a.list {
                v["list"] = json!(enumerate_corners(p).map(|c| report::corner(&p, c)).collect::<Vec<_>>());
            }
            v
        }
    };
    ctx.emit(&to_pretty(&value))
}

fn extremal(ctx: &Ctx, a: &ExtremalArgs) -> Result<(), CliError> {
    let p = GridParams::new(a.grid.n, a.grid.k)?;
    let lim = limits(a.budget);
    if let Some(s) = a.min_corners {
        let m = min_corners_at_size(p, s, lim)?;
        let mut v = report::min_corners(&m);
        v["k"] = json!(p.k());
        v["n"] = json!(p.n());
        ctx.emit(&to_pretty(&v))?;
        if !m.exact {
            return Err(CliError::Budget(format!("minimum over |A| = {s} only bounded")));
        }
        return Ok(());
    }
    let rec = exact_c(p, lim)?;
    ctx.update(p.k(), |f| f.merge_extremal(&rec))?;
    ctx.emit(&to_pretty(&report::extremal(&rec)))?;
    if rec.status == Status::Bounded {
        return Err(CliError::Budget(format!("c_{}({}) in [{}, {}]", p.k(), p.n(), rec.lower, rec.upper)));
    }
    Ok(())
}

fn count_census(p: GridParams, lim: Limits, threads: Option<usize>, depth: usize) -> Result<CensusRecord, CliError> {
    if p.cells() > PRUNED_MAX_CELLS {
        return Err(Error::TooLarge { what: "cell count for the census counter", limit: PRUNED_MAX_CELLS }.into());
    }
    let branches = split_branches(p, depth)?;
    let work = || branches.par_iter().map(|b| count_branch(b, lim)).collect::<Result<Vec<_>, _>>();
    let parts = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Argument(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    Ok(combine(p, &parts))
}

fn census_csv_header() -> &'static str {
    "k,n,count,log2_count,c_k,ratio,method\n"
}

fn census_csv_row(r: &CensusRecord, c: Option<usize>) -> String {
    format!(
        "{},{},{},{},{},{},{}\n",
        r.k,
        r.n,
        r.count,
        r.log2_count(),
        c.map(|c| c.to_string()).unwrap_or_default(),
        c.and_then(|c| r.ratio(c)).map(|x| x.to_string()).unwrap_or_default(),
        r.method.as_str()
    )
}

fn census(ctx: &Ctx, a: &CensusArgs) -> Result<(), CliError> {
    let p = GridParams::new(a.grid.n, a.grid.k)?;
    let rec = if a.oracle {
        count_corner_free_oracle(p)?
    } else {
        count_census(p, limits(a.budget), a.threads, a.split_depth)?
    };
    ctx.update(p.k(), |f| f.merge_census(&rec))?;
    let c = ctx.load(p.k())?.table()?.exact_value(p.k(), p.n());
    if a.csv {
        ctx.emit(&(census_csv_header().to_string() + &census_csv_row(&rec, c)))?;
    } else {
        ctx.emit(&to_pretty(&report::census(&rec, c)))?;
    }
    if !rec.complete {
        return Err(CliError::Budget(format!("count is a lower bound: {}", rec.count)));
    }
    Ok(())
}

fn emit_set(ctx: &Ctx, set: &GridSet, format: SetFormat, notes: &[String]) -> Result<(), CliError> {
    match format {
        SetFormat::Json => ctx.emit(&to_pretty(&grid_set_json(set))),
        SetFormat::Text => {
            let mut s = String::new();
            for n in notes {
                s.push_str("# ");
                s.push_str(n);
                s.push('\n');
            }
            s.push_str(&grid_set_text(set));
            ctx.emit(&s)
        }
    }
}

fn construct(ctx: &Ctx, c: &ConstructCmd) -> Result<(), CliError> {
    match c {
        ConstructCmd::Behrend { n } => {
            if *n == 0 {
                return Err(CliError::Argument("n must be positive".into()));
            }
            let (set, params) = behrend_set_with_params(*n);
            let v = json!({
                "n": n,
                "size": set.len(),
                "elements": set.elements(),
                "base": params.map(|p| p.base),
                "digits": params.map(|p| p.digits),
                "shell": params.and_then(|p| p.shell),
            });
            ctx.emit(&to_pretty(&v))
        }
        ConstructCmd::Diagonal { n, ap, format } => {
            let d: DiagonalConstruction = match ap {
                Some(values) => diagonal_from_values(*n, values)?,
                None => diagonal_corner_free_2d(*n, &corners_core::constructions::behrend_set(*n))?,
            };
            let notes = vec![format!("corner-free, size {}", d.set.len()), format!("dropped differences: {:?}", d.dropped)];
            emit_set(ctx, &d.set, *format, &notes)
        }
        ConstructCmd::Heuristic { grid, budget, format } => {
            let p = GridParams::new(grid.n, grid.k)?;
            let set = heuristic_corner_free(p, *budget, ctx.cli.seed);
            let notes = vec![format!("corner-free, size {}, seed {}", set.len(), ctx.cli.seed)];
            emit_set(ctx, &set, *format, &notes)
        }
    }
}

fn supersat(ctx: &Ctx, c: &SupersatCmd) -> Result<(), CliError> {
    match c {
        SupersatCmd::Audit { set, side, x, density } => {
            let a = read_set(set)?;
            let k = a.params().k();
            let cfg = SupersatConfig::new(*side, *x, *density)?;
            let ck = ctx.exact_ck(k, *side, Limits::default())?;
            let family = build_grid_family_with(&a, cfg, ck)?;
            let r = audit_family(&a, &family);
            ctx.emit(&to_pretty(&report::audit(&r)))
        }
        SupersatCmd::Greedy { set, ck } => {
            let a = read_set(set)?;
            let p = *a.params();
            let ck = match ck {
                Some(c) => *c,
                None => ctx.exact_ck(p.k(), p.n(), Limits::default())?,
            };
            let w = greedy_corner_witnesses(&a);
            let distinct = {
                let mut v = w.clone();
                v.sort_by_key(|c| (c.diff, c.apex));
                v.dedup();
                v.len() == w.len()
            };
            let v = json!({
                "k": p.k(),
                "n": p.n(),
                "size": a.len(),
                "c_k": ck,
                "count": w.len(),
                "required": a.len().saturating_sub(ck),
                "certified": w.len() >= a.len().saturating_sub(ck),
                "distinct": distinct,
                "removal_rule": "cell of the found corner in the most remaining corners, ties to the lowest cell",
                "corners": w.iter().map(|&c| report::corner(&p, c)).collect::<Vec<_>>(),
            });
            ctx.emit(&to_pretty(&v))
        }
        SupersatCmd::DoubleCount { set, ck, s } => {
            let a = read_set(set)?;
            let p = *a.params();
            let ck = match ck {
                Some(c) => *c,
                None => ctx.exact_ck(p.k(), p.n(), Limits::default())?,
            };
            let mut check = check_double_counting(&a, ck)?;
            if let Some(s) = s {
                check.identity = double_counting_identity(&a, *s)?;
            }
            let mut v = report::double_counting(&check);
            v["c_k"] = json!(ck);
            v["size"] = json!(a.len());
            ctx.emit(&to_pretty(&v))
        }
        SupersatCmd::Target { set, c_prime } => {
            let a = read_set(set)?;
            let p = *a.params();
            let ck = ctx.exact_ck(p.k(), p.n(), Limits::default())?;
            let mut rf = RateFunctions::from_values(p.k(), [(p.n(), ck)]);
            if let Some(c) = c_prime {
                rf.c_prime = *c;
            }
            let t = supersaturation_target(&a, &rf)?;
            ctx.emit(&to_pretty(&report::target(&t)))
        }
        SupersatCmd::Primes { x, list } => {
            let mut v = report::pnt(&pnt_bounds_check(*x));
            if *list {
                v["primes"] = json!(primes_up_to(*x));
            }
            ctx.emit(&to_pretty(&v))
        }
    }
}

fn containers(ctx: &Ctx, a: &ContainersArgs) -> Result<(), CliError> {
    let h: Hypergraph = match &a.hypergraph {
        Some(path) => parse_hypergraph(&fs::read_to_string(path)?)?,
        None => corner_hypergraph(GridParams::new(a.n.expect("required"), a.k.expect("required"))?)?,
    };
    if a.emit_hypergraph {
        return ctx.emit(&hypergraph_text(&h));
    }
    let family = build_containers(&h, a.epsilon, BuildLimits { max_containers: a.max_containers, ..Default::default() })?;
    let ver = verify_containers(&h, &family, a.epsilon, VerifyOptions { samples: a.samples, seed: ctx.cli.seed });
    let mut v = json!({
        "r": h.r(),
        "vertex_count": h.vertex_count(),
        "edge_count": h.edge_count(),
        "family": container_set_json(&family),
        "verification": report::verification(&ver),
    });
    if let Some(tau) = a.tau {
        v["hypotheses"] = report::hypotheses(&check_hypotheses(&h, a.epsilon, tau));
        if let Ok(p) = codegree(&h, tau) {
            v["codegree"] = report::codegree(&p);
        }
    }
    ctx.emit(&to_pretty(&v))?;
    if !ver.passed() {
        return Err(Error::VerificationFailed { property: "container family coverage and sparsity".into() }.into());
    }
    Ok(())
}

fn parse_log_base(s: &str) -> Result<LogBase, CliError> {
    if s == "e" {
        return Ok(LogBase::Natural);
    }
    match s.parse::<f64>() {
        Ok(b) if b > 1.0 => Ok(LogBase::Base(b)),
        _ => Err(CliError::Argument(format!("log base {s:?} must be \"e\" or a number > 1"))),
    }
}

fn pipeline(ctx: &Ctx, a: &PipelineArgs) -> Result<(), CliError> {
    let p = GridParams::new(a.grid.n, a.grid.k)?;
    let lim = limits(a.budget);
    let cfg = PipelineConfig { log_base: parse_log_base(&a.log_base)?, c_prime: a.c_prime, ..Default::default() };
    let c = ctx.exact_ck(p.k(), p.n(), lim)?;
    let census = match ctx.load(p.k())?.census_for(p.n())? {
        Some(r) if r.complete => r,
        _ => {
            let r = count_census(p, lim, None, 8)?;
            ctx.update(p.k(), |f| f.merge_census(&r))?;
            if !r.complete {
                return Err(CliError::Budget(format!("census of [{}]^{} incomplete", p.n(), p.k())));
            }
            r
        }
    };
    let rep = container_count_pipeline(p, c, &census, &cfg)?;
    ctx.emit(&to_pretty(&report::pipeline(&rep)))
}

fn table(ctx: &Ctx, a: &TableArgs) -> Result<(), CliError> {
    let k = a.k;
    if k == 0 {
        return Err(CliError::Argument("k must be positive".into()));
    }
    // without a cache directory, results live only for this run
    let mut file = ctx.load(k)?;
    if let Some(budget) = a.budget {
        let lim = Limits::with_nodes(budget);
        for n in 1..=a.n_max {
            let p = GridParams::new(n, k)?;
            let known = file.table()?.get(k, n).is_some_and(|r| r.status == Status::Exact);
            let new_ext = if !known && p.cells() <= lim.max_cells { Some(exact_c(p, lim)?) } else { None };
            let counted = file.census_for(n)?.is_some_and(|r| r.complete);
            let new_census =
                if !counted && p.cells() <= PRUNED_MAX_CELLS { Some(count_census(p, lim, None, 8)?) } else { None };
            let merge = |f: &mut CacheFile| -> Result<(), CliError> {
                if let Some(r) = &new_ext {
                    f.merge_extremal(r)?;
                }
                if let Some(r) = &new_census {
                    f.merge_census(r)?;
                }
                Ok(())
            };
            merge(&mut file)?;
            ctx.update(k, merge)?;
        }
    }
    let t = file.table()?;
    let census = file.census_records()?;
    let mut out = String::from("n,c_k,c_k_lower,c_k_upper,status,census,ratio,f,subadditive_upper\n");
    for n in 1..=a.n_max {
        let rec = t.get(k, n);
        let exact = rec.and_then(ExtremalRecord::value);
        let cen = census.iter().find(|r| r.n == n && r.complete);
        let f = exact.map(|c| c as f64 / (n as f64).powi(k as i32));
        let ratio = match (cen, exact) {
            (Some(r), Some(c)) => r.ratio(c),
            _ => None,
        };
        let sub = t.subadditive_bound(k, n).map(|(b, _)| b);
        let cell = |x: Option<String>| x.unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            n,
            cell(exact.map(|c| c.to_string())),
            cell(rec.map(|r| r.lower.to_string())),
            cell(rec.map(|r| r.upper.to_string())),
            match rec.map(|r| r.status) {
                Some(Status::Exact) => "exact",
                Some(Status::Bounded) => "bounded",
                None => "",
            },
            cell(cen.map(|r| r.count.to_string())),
            cell(ratio.map(|x| x.to_string())),
            cell(f.map(|x| x.to_string())),
            cell(sub.map(|x| x.to_string())),
        ));
    }
    ctx.emit(&out)
}
