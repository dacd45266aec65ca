//! Law checking over enumerated instance spaces.
//!
//! A [`Law`] is a list of stages, each binding one name to a value drawn from
//! a [`Kind`] that may depend on earlier bindings, plus a pure predicate over
//! the finished [`Instance`]. Exhaustive runs walk the stages depth-first in
//! small-first order, so the first counterexample found is a small one.
//! Sampled runs draw every stage uniformly from a per-sample seeded stream.
//!
//! Work is split across the first stage (exhaustive) or across sample numbers
//! (sampled) and merged in order, so `jobs` never changes a report.

mod catalog;

use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::{sample_rng, EnumConfig, Kind, Mode};
use crate::report::{Instance, LawReport, Outcome};
use crate::value::VSet;

pub use catalog::catalog;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("unknown law: {0}")]
    UnknownLaw(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Whether a law is supposed to hold. Expected failures encode unsound
/// alternatives; their counterexample is the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
}

impl Expect {
    pub fn label(self) -> &'static str {
        match self {
            Expect::Pass => "pass",
            Expect::Fail => "fail",
        }
    }
}

/// What a stage sees when it builds its space.
pub struct Ctx {
    /// The first `max_carrier` atoms of the pool.
    pub carrier: VSet,
}

pub struct Stage {
    pub name: &'static str,
    pub space: fn(&Instance, &Ctx) -> Kind,
}

pub struct Law {
    pub id: &'static str,
    pub anchor: &'static str,
    pub expect: Expect,
    pub stages: &'static [Stage],
    pub check: fn(&Instance) -> bool,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law").field("id", &self.id).finish_non_exhaustive()
    }
}

impl Law {
    /// Whether a report matches what this law is supposed to do.
    pub fn as_expected(&self, report: &LawReport) -> bool {
        match self.expect {
            Expect::Pass => report.outcome == Outcome::Pass,
            Expect::Fail => matches!(report.outcome, Outcome::Fail(_)),
        }
    }

    /// Re-evaluates the predicate on a stored instance.
    pub fn replay(&self, instance: &Instance) -> bool {
        (self.check)(instance)
    }
}

pub fn find(id: &str) -> Result<&'static Law, LawError> {
    catalog()
        .iter()
        .find(|l| l.id == id)
        .ok_or_else(|| LawError::UnknownLaw(id.to_owned()))
}

/// Result of a depth-first walk: instances checked and the first failure.
struct Walk {
    checked: u64,
    failure: Option<Instance>,
}

fn walk(law: &Law, ctx: &Ctx, depth: usize, inst: &mut Instance) -> Walk {
    if depth == law.stages.len() {
        let ok = (law.check)(inst);
        return Walk {
            checked: 1,
            failure: (!ok).then(|| inst.clone()),
        };
    }
    let stage = &law.stages[depth];
    let mut checked = 0;
    for v in (stage.space)(inst, ctx).all() {
        inst.push(stage.name, v);
        let w = walk(law, ctx, depth + 1, inst);
        inst.pop();
        checked += w.checked;
        if w.failure.is_some() {
            return Walk { checked, failure: w.failure };
        }
    }
    Walk { checked, failure: None }
}

/// Counts leaves, giving up once the count exceeds `cap`.
fn count_upto(law: &Law, ctx: &Ctx, depth: usize, inst: &mut Instance, cap: u128) -> u128 {
    let stage = &law.stages[depth];
    let kind = (stage.space)(inst, ctx);
    if depth + 1 == law.stages.len() {
        return kind.count();
    }
    let mut total: u128 = 0;
    for v in kind.all() {
        inst.push(stage.name, v);
        total = total.saturating_add(count_upto(law, ctx, depth + 1, inst, cap - total.min(cap)));
        inst.pop();
        if total > cap {
            break;
        }
    }
    total
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn merge(id: &str, parts: impl IntoIterator<Item = Walk>) -> LawReport {
    let mut instances = 0;
    for w in parts {
        instances += w.checked;
        if let Some(cx) = w.failure {
            return LawReport { id: id.to_owned(), instances, outcome: Outcome::Fail(cx) };
        }
    }
    LawReport { id: id.to_owned(), instances, outcome: Outcome::Pass }
}

fn run_exhaustive(law: &Law, ctx: &Ctx, cfg: &EnumConfig) -> LawReport {
    if law.stages.is_empty() {
        return merge(law.id, [walk(law, ctx, 0, &mut Instance::new())]);
    }
    let estimate = count_upto(law, ctx, 0, &mut Instance::new(), cfg.cap as u128);
    if estimate > cfg.cap as u128 {
        return LawReport {
            id: law.id.to_owned(),
            instances: 0,
            outcome: Outcome::BudgetExceeded(estimate),
        };
    }
    let first = &law.stages[0];
    let heads = (first.space)(&Instance::new(), ctx).all();
    let branch = |v: &crate::value::Value| {
        let mut inst = Instance::new().with(first.name, v.clone());
        walk(law, ctx, 1, &mut inst)
    };
    if cfg.jobs <= 1 {
        // sequential: stop at the first failing branch
        let mut parts = Vec::new();
        for v in &heads {
            let w = branch(v);
            let failed = w.failure.is_some();
            parts.push(w);
            if failed {
                break;
            }
        }
        return merge(law.id, parts);
    }
    let parts: Vec<Walk> = with_pool(cfg.jobs, || heads.par_iter().map(branch).collect());
    merge(law.id, parts)
}

fn draw(law: &Law, ctx: &Ctx, seed: u64, i: u64) -> Option<Instance> {
    let mut rng = sample_rng(seed, i);
    let mut inst = Instance::new();
    for stage in law.stages {
        let v = (stage.space)(&inst, ctx).sample(&mut rng)?;
        inst.push(stage.name, v);
    }
    Some(inst)
}

fn run_sampled(law: &Law, ctx: &Ctx, count: u64, seed: u64, jobs: usize) -> LawReport {
    let one = |i: u64| match draw(law, ctx, seed, i) {
        None => Walk { checked: 0, failure: None },
        Some(inst) => {
            let ok = (law.check)(&inst);
            Walk { checked: 1, failure: (!ok).then_some(inst) }
        }
    };
    if jobs <= 1 {
        let mut parts = Vec::new();
        for i in 0..count {
            let w = one(i);
            let failed = w.failure.is_some();
            parts.push(w);
            if failed {
                break;
            }
        }
        return merge(law.id, parts);
    }
    let parts: Vec<Walk> = with_pool(jobs, || (0..count).into_par_iter().map(one).collect());
    merge(law.id, parts)
}

/// Checks one law under `cfg`.
pub fn run_law(law: &Law, cfg: &EnumConfig) -> Result<LawReport, LawError> {
    cfg.validate().map_err(LawError::InvalidConfig)?;
    let ctx = Ctx { carrier: cfg.carrier(cfg.max_carrier) };
    Ok(match cfg.mode {
        Mode::Exhaustive => run_exhaustive(law, &ctx, cfg),
        Mode::Sampled { count, seed } => run_sampled(law, &ctx, count, seed, cfg.jobs),
    })
}

/// Checks the named laws in order; `"all"` expands to the whole catalog.
pub fn run_suite(ids: &[&str], cfg: &EnumConfig) -> Result<Vec<(&'static Law, LawReport)>, LawError> {
    let laws = resolve(ids)?;
    laws.into_iter()
        .map(|law| run_law(law, cfg).map(|r| (law, r)))
        .collect()
}

/// Looks up every id before any work is done.
pub fn resolve(ids: &[&str]) -> Result<Vec<&'static Law>, LawError> {
    let mut out = Vec::new();
    for id in ids {
        if *id == "all" {
            out.extend(catalog().iter());
        } else {
            out.push(find(id)?);
        }
    }
    Ok(out)
}
